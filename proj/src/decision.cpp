#include "faudit/decision.hpp"

#include "faudit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace faudit {

namespace {

void check_values(const ActionValues& values, const FamilyDescriptor& family) {
  const int r = family_dim(family);
  if (values.weights.size() != r)
    throw ValidationError("action values: weight vector must have length " + std::to_string(r) +
                          ", got " + std::to_string(values.weights.size()));
}

void check_belief_spec(const BeliefSpec& spec, const FamilyDescriptor& family) {
  const int r = family_dim(family);
  switch (spec.kind) {
    case BeliefKind::Mvue:
      return;
    case BeliefKind::Biased:
      if (spec.bias.size() != r)
        throw ValidationError("belief: bias vector must have length " + std::to_string(r) +
                              ", got " + std::to_string(spec.bias.size()));
      return;
    case BeliefKind::Inflated:
      if (!(spec.variance_multiplier >= 1.0))
        throw ValidationError("belief: variance multiplier must be >= 1, got " +
                              std::to_string(spec.variance_multiplier));
      return;
  }
}

}  // namespace

std::string belief_name(const BeliefSpec& spec) {
  char buf[64];
  switch (spec.kind) {
    case BeliefKind::Mvue:
      return "mvue";
    case BeliefKind::Biased: {
      std::string out = "biased(";
      for (Eigen::Index i = 0; i < spec.bias.size(); ++i) {
        if (i) out += ",";
        std::snprintf(buf, sizeof(buf), "%g", spec.bias[i]);
        out += buf;
      }
      return out + ")";
    }
    case BeliefKind::Inflated:
      std::snprintf(buf, sizeof(buf), "inflated(%g)", spec.variance_multiplier);
      return buf;
  }
  return "unknown";
}

Vector form_belief(const BeliefSpec& spec, const FamilyDescriptor& family, const Feed& feed,
                   Seed noise_seed) {
  check_belief_spec(spec, family);
  Vector belief = mvue(family, feed);
  switch (spec.kind) {
    case BeliefKind::Mvue:
      return belief;
    case BeliefKind::Biased:
      return belief + spec.bias;
    case BeliefKind::Inflated: {
      if (spec.variance_multiplier == 1.0) return belief;
      const Vector var = mvue_sampling_variance(
          family, clamp_to_interior(family, belief), static_cast<int>(feed.size()));
      Rng rng(noise_seed);
      for (Eigen::Index i = 0; i < belief.size(); ++i)
        belief[i] += std::sqrt((spec.variance_multiplier - 1.0) * var[i]) * rng.normal();
      return belief;
    }
  }
  return belief;
}

DecisionRecord decide(const ActionValues& values, const Vector& belief, double eta,
                      std::string query_id) {
  if (values.weights.size() != belief.size())
    throw ValidationError("decide: weight vector and belief must have equal length");
  DecisionRecord record;
  record.query_id = std::move(query_id);
  record.score = values.score(belief);
  record.eta = eta;
  record.choice = record.score > eta ? Action::A1 : Action::A0;
  return record;
}

double calibrate_eta(const ActionValues& values, const FamilyDescriptor& family,
                     const Vector& theta0, int m, double rho, int trials, Seed seed) {
  check_values(values, family);
  require_interior(family, theta0);
  if (!(rho > 0.0 && rho < 1.0))
    throw ValidationError("calibrate_eta: rho must lie in (0, 1), got " + std::to_string(rho));
  if (trials < 1)
    throw ValidationError("calibrate_eta: trials must be >= 1, got " + std::to_string(trials));
  const double boundary = values.score(theta0);
  if (std::fabs(boundary) > 1e-9)
    throw ValidationError("calibrate_eta: theta0 must be on the indifference boundary "
                          "(score(theta0) = 0), got score " + std::to_string(boundary));

  std::vector<double> scores(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    const Feed feed = sample_feed(family, theta0, m, derive_seed(seed, t));
    scores[static_cast<std::size_t>(t)] = values.score(mvue(family, feed));
  }
  std::sort(scores.begin(), scores.end());
  const auto k = static_cast<std::size_t>(std::ceil((1.0 - rho) * trials));
  return scores[std::max<std::size_t>(k, 1) - 1];
}

double distinguishability_probe(const FamilyDescriptor& family, const Vector& theta,
                                const Vector& theta_prime, const BeliefSpec& belief,
                                const ActionValues& values, double eta, int m, int trials,
                                Seed seed) {
  check_values(values, family);
  check_belief_spec(belief, family);
  validate_theta(family, theta);
  validate_theta(family, theta_prime);
  if (trials < 1)
    throw ValidationError("distinguishability_probe: trials must be >= 1, got " +
                          std::to_string(trials));

  long count = 0;
  long count_prime = 0;
  for (int t = 0; t < trials; ++t) {
    const Seed trial_seed = derive_seed(seed, t);
    const Feed z = sample_feed(family, theta, m, derive_seed(trial_seed, 0));
    const Feed z_prime = sample_feed(family, theta_prime, m, derive_seed(trial_seed, 1));
    const Vector b = form_belief(belief, family, z, derive_seed(trial_seed, 2));
    const Vector b_prime = form_belief(belief, family, z_prime, derive_seed(trial_seed, 3));
    if (decide(values, b, eta).choice == Action::A1) ++count;
    if (decide(values, b_prime, eta).choice == Action::A1) ++count_prime;
  }
  return std::fabs(static_cast<double>(count) - static_cast<double>(count_prime)) / trials;
}

}  // namespace faudit
