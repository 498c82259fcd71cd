#include "faudit/special.hpp"

#include "faudit/types.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace faudit {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

/// Series expansion of P(a, x); converges fastest for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Continued fraction for Q(a, x) by modified Lentz; best for x >= a + 1.
double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

void check_gamma_args(double a, double x) {
  if (!(a > 0.0)) throw DomainError("incomplete gamma: shape must be > 0, got " + std::to_string(a));
  if (!(x >= 0.0)) throw DomainError("incomplete gamma: argument must be >= 0, got " + std::to_string(x));
}

void check_dof(int r) {
  if (r < 1) throw DomainError("chi-squared: degrees of freedom must be >= 1, got " + std::to_string(r));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi2_cdf(int r, double x) {
  check_dof(r);
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * r, 0.5 * x);
}

double chi2_pdf(int r, double x) {
  check_dof(r);
  if (x < 0.0) return 0.0;
  const double a = 0.5 * r;
  if (x == 0.0) {
    if (r == 1) return std::numeric_limits<double>::infinity();
    if (r == 2) return 0.5;
    return 0.0;
  }
  return 0.5 * std::exp((a - 1.0) * std::log(0.5 * x) - 0.5 * x - std::lgamma(a));
}

double chi2_quantile(int r, double q) {
  check_dof(r);
  if (!(q >= 0.0) || q >= 1.0)
    throw DomainError("chi-squared quantile: order must lie in [0, 1), got " + std::to_string(q));
  if (q == 0.0) return 0.0;

  // Wilson-Hilferty approximation as the starting point.
  const double z = normal_quantile(q);
  const double t = 1.0 - 2.0 / (9.0 * r) + z * std::sqrt(2.0 / (9.0 * r));
  double x = r * t * t * t;
  if (!(x > 0.0)) x = 0.5 / r;

  double lo = 0.0;
  double hi = std::fmax(x, 1.0);
  for (int i = 0; i < 200 && chi2_cdf(r, hi) < q; ++i) hi *= 2.0;
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

  for (int i = 0; i < 200; ++i) {
    const double f = chi2_cdf(r, x) - q;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    const double fp = chi2_pdf(r, x);
    double next;
    if (fp > 0.0 && std::isfinite(fp)) {
      next = x - f / fp;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    } else {
      next = 0.5 * (lo + hi);
    }
    const double step = std::fabs(next - x);
    x = next;
    if (step <= 1e-13 * (1.0 + x) || hi - lo <= 1e-13 * (1.0 + x)) break;
  }
  return x;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440084436210485); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("normal quantile: order must lie in (0, 1), got " + std::to_string(p));

  // Acklam's rational approximation, relative error ~1e-9.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double u = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  } else if (p <= 1.0 - plow) {
    const double u = p - 0.5;
    const double v = u * u;
    x = (((((a[0] * v + a[1]) * v + a[2]) * v + a[3]) * v + a[4]) * v + a[5]) * u /
        (((((b[0] * v + b[1]) * v + b[2]) * v + b[3]) * v + b[4]) * v + 1.0);
  } else {
    const double u = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }

  // One Halley step against the exact erfc-based CDF.
  const double e = normal_cdf(x) - p;
  const double u = e * 2.5066282746310005024157652848110 * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace faudit
