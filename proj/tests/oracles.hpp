#pragma once

// Test-only reference implementations, deliberately built on different
// numerics than the library: the chi-squared CDF by adaptive Simpson
// quadrature (after the substitution y = t^2, which makes the integrand
// smooth at the origin for every r >= 1), its inverse by bisection, and the
// information matrix by a finite-difference score-product Monte Carlo.

#include "faudit/family.hpp"
#include "faudit/types.hpp"

#include <cmath>
#include <functional>

namespace oracles {

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 60);
}

inline double chi2_cdf(int r, double x) {
  if (x <= 0.0) return 0.0;
  const double log_const = -0.5 * r * std::log(2.0) - std::lgamma(0.5 * r);
  const auto integrand = [r, log_const](double t) {
    if (t == 0.0) return r == 1 ? 2.0 * std::exp(log_const) : 0.0;
    return 2.0 * std::exp((r - 1) * std::log(t) - 0.5 * t * t + log_const);
  };
  return integrate(integrand, 0.0, std::sqrt(x), 1e-13);
}

inline double chi2_quantile(int r, double q) {
  if (q <= 0.0) return 0.0;
  double hi = 1.0;
  while (chi2_cdf(r, hi) < q) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chi2_cdf(r, mid) < q)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-11 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

/// Information matrix estimated as the average outer product of
/// finite-difference scores over n fresh draws at theta.
inline faudit::Matrix fisher_mc(const faudit::FamilyDescriptor& family,
                                const faudit::Vector& theta, int n, faudit::Seed seed) {
  const int r = faudit::family_dim(family);
  faudit::Matrix acc = faudit::Matrix::Zero(r, r);
  const faudit::Feed feed = faudit::sample_feed(family, theta, n, seed);
  faudit::Vector z(1);
  faudit::Vector score(r);
  for (int i = 0; i < n; ++i) {
    z[0] = feed.items(i, 0);
    for (int c = 0; c < r; ++c) {
      const double h = 1e-4 * std::fmax(1.0, std::fabs(theta[c]));
      faudit::Vector up = theta;
      faudit::Vector down = theta;
      up[c] += h;
      down[c] -= h;
      score[c] =
          (faudit::log_density(family, up, z) - faudit::log_density(family, down, z)) / (2.0 * h);
    }
    acc += score * score.transpose();
  }
  return acc / static_cast<double>(n);
}

}  // namespace oracles
