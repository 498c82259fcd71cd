#include "faudit/family.hpp"

#include "faudit/rng.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace faudit {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void check_dim(const FamilyDescriptor& family, const Vector& theta) {
  const int r = family_dim(family);
  if (theta.size() != r)
    throw DomainError(family_name(family) + ": theta must have length " + std::to_string(r) +
                      ", got " + std::to_string(theta.size()));
  for (Eigen::Index i = 0; i < theta.size(); ++i)
    if (!std::isfinite(theta[i]))
      throw DomainError(family_name(family) + ": theta must be finite, got " + fmt(theta[i]) +
                        " at coordinate " + std::to_string(i + 1));
}

void check_scalar_feed(const FamilyDescriptor& family, const Feed& feed, int min_m) {
  if (feed.dim() != 1)
    throw DomainError(family_name(family) + ": expects scalar content, got dimension " +
                      std::to_string(feed.dim()));
  if (feed.size() < min_m)
    throw InsufficientDataError(family_name(family) + ": needs at least " + std::to_string(min_m) +
                                " items, got " + std::to_string(feed.size()));
}

double sample_mean(const Feed& feed) { return feed.items.col(0).mean(); }

/// Sum of squared deviations from the sample mean.
double sum_sq_dev(const Feed& feed) {
  const double mean = sample_mean(feed);
  return (feed.items.col(0).array() - mean).square().sum();
}

Vector gaussian_estimate(const FamilyDescriptor& family, const Feed& feed, double divisor_offset) {
  check_scalar_feed(family, feed, 2);
  Vector theta(2);
  theta[0] = sample_mean(feed);
  theta[1] = sum_sq_dev(feed) / (static_cast<double>(feed.size()) - divisor_offset);
  return theta;
}

Vector mean_estimate(const FamilyDescriptor& family, const Feed& feed) {
  check_scalar_feed(family, feed, 1);
  if (family.id == FamilyId::Bernoulli) {
    for (Eigen::Index i = 0; i < feed.size(); ++i) {
      const double z = feed.items(i, 0);
      if (z != 0.0 && z != 1.0)
        throw DomainError("bernoulli: feed items must be 0 or 1, got " + fmt(z) + " at item " +
                          std::to_string(i + 1));
    }
  } else if (family.id == FamilyId::Poisson) {
    for (Eigen::Index i = 0; i < feed.size(); ++i) {
      const double z = feed.items(i, 0);
      if (!(z >= 0.0))
        throw DomainError("poisson: feed items must be >= 0, got " + fmt(z) + " at item " +
                          std::to_string(i + 1));
    }
  }
  Vector theta(1);
  theta[0] = sample_mean(feed);
  return theta;
}

}  // namespace

int family_dim(const FamilyDescriptor& family) {
  return family.id == FamilyId::Gaussian1D ? 2 : 1;
}

std::string family_name(const FamilyDescriptor& family) {
  switch (family.id) {
    case FamilyId::Gaussian1D: return "gaussian1d";
    case FamilyId::GaussianKnownVar: return "gaussian_known_var";
    case FamilyId::Bernoulli: return "bernoulli";
    case FamilyId::Poisson: return "poisson";
  }
  throw DomainError("unknown family id");
}

std::string regularity_notes(const FamilyDescriptor& family) {
  std::string common =
      "open parameter space; identifiable; support independent of theta; "
      "log-density twice continuously differentiable in theta; "
      "positive-definite information matrix on the interior";
  switch (family.id) {
    case FamilyId::Gaussian1D:
      return common + "; boundary variance = 0 is degenerate";
    case FamilyId::GaussianKnownVar:
      return common + "; variance fixed at " + fmt(family.known_variance);
    case FamilyId::Bernoulli:
      return common + "; boundary rates 0 and 1 are degenerate";
    case FamilyId::Poisson:
      return common + "; boundary intensity = 0 is degenerate";
  }
  throw DomainError("unknown family id");
}

void validate_family(const FamilyDescriptor& family) {
  family_name(family);
  if (family.id == FamilyId::GaussianKnownVar &&
      !(family.known_variance > 0.0 && std::isfinite(family.known_variance)))
    throw DomainError("gaussian_known_var: known variance must be > 0, got " +
                      fmt(family.known_variance));
}

void validate_theta(const FamilyDescriptor& family, const Vector& theta) {
  validate_family(family);
  check_dim(family, theta);
  switch (family.id) {
    case FamilyId::Gaussian1D:
      if (!(theta[1] >= 0.0))
        throw DomainError("gaussian1d: variance must be >= 0, got " + fmt(theta[1]));
      return;
    case FamilyId::GaussianKnownVar:
      return;
    case FamilyId::Bernoulli:
      if (!(theta[0] >= 0.0 && theta[0] <= 1.0))
        throw DomainError("bernoulli: rate must lie in [0, 1], got " + fmt(theta[0]));
      return;
    case FamilyId::Poisson:
      if (!(theta[0] >= 0.0))
        throw DomainError("poisson: intensity must be >= 0, got " + fmt(theta[0]));
      return;
  }
}

void require_interior(const FamilyDescriptor& family, const Vector& theta) {
  validate_theta(family, theta);
  switch (family.id) {
    case FamilyId::Gaussian1D:
      if (theta[1] == 0.0) throw SingularityError("gaussian1d: variance must be > 0 here");
      return;
    case FamilyId::GaussianKnownVar:
      return;
    case FamilyId::Bernoulli:
      if (theta[0] == 0.0 || theta[0] == 1.0)
        throw SingularityError("bernoulli: rate must lie in (0, 1) here, got " + fmt(theta[0]));
      return;
    case FamilyId::Poisson:
      if (theta[0] == 0.0) throw SingularityError("poisson: intensity must be > 0 here");
      return;
  }
}

Vector clamp_to_interior(const FamilyDescriptor& family, Vector theta, double margin) {
  validate_family(family);
  check_dim(family, theta);
  switch (family.id) {
    case FamilyId::Gaussian1D:
      theta[1] = std::fmax(theta[1], margin);
      return theta;
    case FamilyId::GaussianKnownVar:
      return theta;
    case FamilyId::Bernoulli:
      theta[0] = std::fmin(std::fmax(theta[0], margin), 1.0 - margin);
      return theta;
    case FamilyId::Poisson:
      theta[0] = std::fmax(theta[0], margin);
      return theta;
  }
  return theta;
}

Feed sample_feed(const FamilyDescriptor& family, const Vector& theta, int m, Seed seed) {
  validate_theta(family, theta);
  if (m < 1) throw DomainError("sample_feed: feed length must be >= 1, got " + std::to_string(m));
  Rng rng(seed);
  Feed feed;
  feed.items.resize(m, 1);
  switch (family.id) {
    case FamilyId::Gaussian1D: {
      const double sd = std::sqrt(theta[1]);
      for (int i = 0; i < m; ++i) feed.items(i, 0) = theta[0] + sd * rng.normal();
      return feed;
    }
    case FamilyId::GaussianKnownVar: {
      const double sd = std::sqrt(family.known_variance);
      for (int i = 0; i < m; ++i) feed.items(i, 0) = theta[0] + sd * rng.normal();
      return feed;
    }
    case FamilyId::Bernoulli:
      for (int i = 0; i < m; ++i) feed.items(i, 0) = rng.bernoulli(theta[0]);
      return feed;
    case FamilyId::Poisson:
      for (int i = 0; i < m; ++i) feed.items(i, 0) = static_cast<double>(rng.poisson(theta[0]));
      return feed;
  }
  return feed;
}

Vector mvue(const FamilyDescriptor& family, const Feed& feed) {
  validate_family(family);
  if (family.id == FamilyId::Gaussian1D) return gaussian_estimate(family, feed, 1.0);
  return mean_estimate(family, feed);
}

Vector mle(const FamilyDescriptor& family, const Feed& feed) {
  validate_family(family);
  if (family.id == FamilyId::Gaussian1D) return gaussian_estimate(family, feed, 0.0);
  return mean_estimate(family, feed);
}

Matrix fisher_information(const FamilyDescriptor& family, const Vector& theta) {
  require_interior(family, theta);
  const int r = family_dim(family);
  Matrix info = Matrix::Zero(r, r);
  switch (family.id) {
    case FamilyId::Gaussian1D: {
      const double v = theta[1];
      info(0, 0) = 1.0 / v;
      info(1, 1) = 1.0 / (2.0 * v * v);
      return info;
    }
    case FamilyId::GaussianKnownVar:
      info(0, 0) = 1.0 / family.known_variance;
      return info;
    case FamilyId::Bernoulli:
      info(0, 0) = 1.0 / (theta[0] * (1.0 - theta[0]));
      return info;
    case FamilyId::Poisson:
      info(0, 0) = 1.0 / theta[0];
      return info;
  }
  return info;
}

double log_density(const FamilyDescriptor& family, const Vector& theta, const Vector& z) {
  require_interior(family, theta);
  if (z.size() != 1)
    throw DomainError(family_name(family) + ": content must be scalar, got length " +
                      std::to_string(z.size()));
  const double x = z[0];
  constexpr double kLog2Pi = 1.8378770664093454835606594728112;
  switch (family.id) {
    case FamilyId::Gaussian1D: {
      const double d = x - theta[0];
      return -0.5 * (kLog2Pi + std::log(theta[1])) - 0.5 * d * d / theta[1];
    }
    case FamilyId::GaussianKnownVar: {
      const double d = x - theta[0];
      return -0.5 * (kLog2Pi + std::log(family.known_variance)) -
             0.5 * d * d / family.known_variance;
    }
    case FamilyId::Bernoulli:
      if (x != 0.0 && x != 1.0)
        throw DomainError("bernoulli: content must be 0 or 1, got " + fmt(x));
      return x * std::log(theta[0]) + (1.0 - x) * std::log(1.0 - theta[0]);
    case FamilyId::Poisson: {
      if (!(x >= 0.0) || x != std::floor(x))
        throw DomainError("poisson: content must be a count >= 0, got " + fmt(x));
      return -theta[0] + x * std::log(theta[0]) - std::lgamma(x + 1.0);
    }
  }
  throw DomainError("unknown family id");
}

Vector mvue_sampling_variance(const FamilyDescriptor& family, const Vector& theta, int m) {
  require_interior(family, theta);
  const int min_m = family.id == FamilyId::Gaussian1D ? 2 : 1;
  if (m < min_m)
    throw InsufficientDataError(family_name(family) + ": sampling variance needs m >= " +
                                std::to_string(min_m) + ", got " + std::to_string(m));
  Vector var(family_dim(family));
  switch (family.id) {
    case FamilyId::Gaussian1D:
      var[0] = theta[1] / m;
      var[1] = 2.0 * theta[1] * theta[1] / (m - 1.0);
      return var;
    case FamilyId::GaussianKnownVar:
      var[0] = family.known_variance / m;
      return var;
    case FamilyId::Bernoulli:
      var[0] = theta[0] * (1.0 - theta[0]) / m;
      return var;
    case FamilyId::Poisson:
      var[0] = theta[0] / m;
      return var;
  }
  return var;
}

}  // namespace faudit
