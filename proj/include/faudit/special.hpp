#pragma once

namespace faudit {

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
/// Absolute error below 1e-14 over the tested range.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Chi-squared distribution with r >= 1 degrees of freedom.
double chi2_cdf(int r, double x);
double chi2_pdf(int r, double x);

/// Inverse chi-squared CDF. q must lie in [0, 1); q = 0 returns 0.
/// Wilson-Hilferty start, then safeguarded Newton on the CDF; the result is
/// accurate to well under 1e-8 absolute.
double chi2_quantile(int r, double q);

double normal_cdf(double x);

/// Inverse standard normal CDF for p in (0, 1). Rational initial estimate
/// refined by one Halley step on erfc, giving near machine precision.
double normal_quantile(double p);

}  // namespace faudit
