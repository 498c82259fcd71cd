#include "faudit/mc.hpp"

#include "faudit/parallel.hpp"
#include "faudit/platform.hpp"
#include "faudit/rng.hpp"
#include "faudit/special.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace faudit {

namespace {

constexpr double kZ995 = 2.5758293035489004;  // 99% two-sided normal quantile

double proportion_half_width(double p, long n) {
  return std::fmax(kZ995 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)),
                   1.0 / static_cast<double>(n));
}

/// Conservative band for a difference of two proportions on n paired trials.
double difference_half_width(long n) {
  return std::fmax(kZ995 * std::sqrt(0.5 / static_cast<double>(n)),
                   1.0 / static_cast<double>(n));
}

Seed experiment_base(const ExperimentPlan& plan) {
  return derive_seed(plan.master_seed, static_cast<std::uint64_t>(plan.id));
}

bool is_stochastic(ExperimentId id) {
  return id != ExperimentId::DiversitySweep && id != ExperimentId::CostSweep;
}

void check_axes(const ExperimentPlan& plan) {
  if (plan.epsilons.empty()) throw ValidationError("mc: epsilons must be non-empty");
  if (plan.ms.empty()) throw ValidationError("mc: ms must be non-empty");
  for (double e : plan.epsilons)
    if (!(e >= 0.0 && e <= 1.0))
      throw ValidationError("mc: epsilon must lie in [0, 1], got " + std::to_string(e));
  for (int m : plan.ms)
    if (m < 1) throw ValidationError("mc: m must be >= 1, got " + std::to_string(m));
}

struct SweepPoint {
  double epsilon;
  int m;
  double abscissa;
};

/// The swept audit axis: epsilon by default, m when ms has several entries.
std::vector<SweepPoint> audit_sweep(const ExperimentPlan& plan) {
  check_axes(plan);
  if (plan.epsilons.size() > 1 && plan.ms.size() > 1)
    throw ValidationError("mc: only one of epsilons/ms may hold more than one value");
  std::vector<SweepPoint> points;
  if (plan.ms.size() > 1) {
    auto ms = plan.ms;
    std::sort(ms.begin(), ms.end());
    for (int m : ms) points.push_back({plan.epsilons[0], m, static_cast<double>(m)});
  } else {
    auto eps = plan.epsilons;
    std::sort(eps.begin(), eps.end());
    for (double e : eps) points.push_back({e, plan.ms[0], e});
  }
  return points;
}

std::vector<CurvePoint> run_rejection_rate(const ExperimentPlan& plan, bool power) {
  validate_theta(plan.family, plan.theta);
  if (power) validate_theta(plan.family, plan.theta_prime);
  const auto points = audit_sweep(plan);

  PlatformSpec spec;
  spec.family = plan.family;
  if (power) {
    spec.mapping = MappingKind::Lookup;
    spec.table = {{"x", plan.theta}, {"x_prime", plan.theta_prime}};
  } else {
    spec.mapping = MappingKind::Constant;
    spec.constant_theta = plan.theta;
  }
  const auto platform = make_platform(spec);
  const CounterfactualPair pair{"x", "x_prime", power ? "alternative" : "null"};

  std::vector<AuditConfig> configs;
  configs.reserve(points.size());
  for (const auto& p : points) {
    AuditConfig config;
    config.family = plan.family;
    config.epsilon = p.epsilon;
    config.m = p.m;
    config.estimator = plan.estimator;
    config.info_point = plan.info_point;
    if (plan.info_point == InfoPoint::AtOracleTheta)
      config.oracle_theta =
          power ? Vector(0.5 * (plan.theta + plan.theta_prime)) : plan.theta;
    validate_audit_config(config);
    configs.push_back(config);
  }

  const auto n = static_cast<std::size_t>(plan.trials);
  const Seed base = experiment_base(plan);
  std::vector<std::vector<std::uint8_t>> reject(points.size(),
                                                std::vector<std::uint8_t>(n, 0));
  parallel_for(n, plan.threads, [&](std::size_t t) {
    const Seed seed_t = derive_seed(base, t);
    for (std::size_t p = 0; p < points.size(); ++p) {
      const AuditVerdict verdict = audit_pair(configs[p], *platform, pair, seed_t);
      reject[p][t] = verdict.hypothesis == Hypothesis::H1 ? 1 : 0;
    }
  });

  std::vector<CurvePoint> curve;
  for (std::size_t p = 0; p < points.size(); ++p) {
    long count = 0;
    for (std::size_t t = 0; t < n; ++t) count += reject[p][t];
    const double est = static_cast<double>(count) / static_cast<double>(n);
    curve.push_back({points[p].abscissa, est, proportion_half_width(est, plan.trials),
                     plan.trials});
  }
  return curve;
}

std::vector<CurvePoint> run_unbiasedness(const ExperimentPlan& plan) {
  if (plan.thetas.empty())
    throw ValidationError("mc: unbiasedness needs a non-empty thetas list");
  check_axes(plan);
  const int m = plan.ms[0];
  const int r = family_dim(plan.family);
  const auto n = static_cast<std::size_t>(plan.trials);
  const Seed base = experiment_base(plan);

  std::vector<CurvePoint> curve;
  for (std::size_t j = 0; j < plan.thetas.size(); ++j) {
    const Vector& theta = plan.thetas[j];
    require_interior(plan.family, theta);
    Matrix estimates(static_cast<Eigen::Index>(n), r);
    parallel_for(n, plan.threads, [&](std::size_t t) {
      const Feed feed = sample_feed(plan.family, theta, m, derive_seed(base, t));
      const Vector est = plan.estimator == EstimatorId::Mvue ? mvue(plan.family, feed)
                                                             : mle(plan.family, feed);
      estimates.row(static_cast<Eigen::Index>(t)) = est.transpose();
    });

    double worst = 0.0;
    for (int c = 0; c < r; ++c) {
      const double mean = estimates.col(c).mean();
      const double var =
          (estimates.col(c).array() - mean).square().sum() / (static_cast<double>(n) - 1.0);
      const double se = std::sqrt(var / static_cast<double>(n));
      const double standardized =
          se > 0.0 ? std::fabs(mean - theta[c]) / se
                   : (mean == theta[c] ? 0.0 : std::numeric_limits<double>::infinity());
      worst = std::fmax(worst, standardized);
    }
    curve.push_back({static_cast<double>(j + 1), worst, 0.0, plan.trials});
  }
  return curve;
}

std::vector<CurvePoint> run_ztest_equivalence(const ExperimentPlan& plan) {
  if (plan.family.id != FamilyId::GaussianKnownVar)
    throw ValidationError("mc: z_test_equivalence requires family gaussian_known_var");
  const auto n = static_cast<std::size_t>(plan.trials);
  const Seed base = experiment_base(plan);
  std::vector<std::uint8_t> agree(n, 0);

  parallel_for(n, plan.threads, [&](std::size_t t) {
    Rng rng(derive_seed(base, t));
    FamilyDescriptor fam;
    fam.id = FamilyId::GaussianKnownVar;
    fam.known_variance = 0.5 + 1.5 * rng.uniform01();
    Vector theta(1), theta_prime(1);
    theta[0] = 2.0 * rng.uniform01() - 1.0;
    theta_prime[0] =
        rng.uniform01() < 0.5 ? theta[0] : theta[0] + (rng.uniform01() - 0.5);
    const double eps = 0.01 + 0.19 * rng.uniform01();
    const int m = 2 + static_cast<int>(rng.uniform01() * 199.0);

    const Feed z = sample_feed(fam, theta, m, rng.next_u64());
    const Feed z_prime = sample_feed(fam, theta_prime, m, rng.next_u64());
    const Vector est = mvue(fam, z);
    const Vector est_prime = mvue(fam, z_prime);

    AuditConfig config;
    config.family = fam;
    config.epsilon = eps;
    config.m = m;
    const bool audit_reject = audit_statistic(config, est, est_prime) >=
                              audit_threshold(fam, m, eps);

    const double zstat =
        (est[0] - est_prime[0]) / std::sqrt(2.0 * fam.known_variance / m);
    const bool z_reject = std::fabs(zstat) >= normal_quantile(1.0 - 0.5 * eps);
    agree[t] = audit_reject == z_reject ? 1 : 0;
  });

  long count = 0;
  for (std::size_t t = 0; t < n; ++t) count += agree[t];
  const double est = static_cast<double>(count) / static_cast<double>(n);
  return {{0.0, est, proportion_half_width(est, plan.trials), plan.trials}};
}

std::vector<CurvePoint> run_gullibility_panel(const ExperimentPlan& plan) {
  const int r = family_dim(plan.family);
  check_axes(plan);
  const int m = plan.ms[0];
  validate_theta(plan.family, plan.theta);
  validate_theta(plan.family, plan.theta_prime);
  if (plan.theta0.size() != r)
    throw ValidationError("mc: gullibility_panel needs theta0 (indifference boundary)");
  if (!(plan.rho > 0.0 && plan.rho < 1.0))
    throw ValidationError("mc: rho must lie in (0, 1), got " + std::to_string(plan.rho));
  if (plan.calibration_trials < 100)
    throw ValidationError("mc: calibration_trials must be >= 100, got " +
                          std::to_string(plan.calibration_trials));

  ActionValues values;
  if (plan.value_weights.size() == 0) {
    values.weights = Vector::Zero(r);
    values.weights[0] = 1.0;
  } else {
    values.weights = plan.value_weights;
  }
  values.intercept = plan.value_intercept;

  const Seed base = experiment_base(plan);
  constexpr std::uint64_t kCalibStream = 0x100000000ULL;
  constexpr std::uint64_t kProbeStream = 0x200000000ULL;

  const double eta =
      calibrate_eta(values, plan.family, plan.theta0, m, plan.rho,
                    plan.calibration_trials, derive_seed(base, kCalibStream));

  // Fresh null trials measure the achieved decision-level false-positive
  // rate at the calibrated margin.
  const auto n = static_cast<std::size_t>(plan.trials);
  std::vector<std::uint8_t> fired(n, 0);
  parallel_for(n, plan.threads, [&](std::size_t t) {
    const Feed feed = sample_feed(plan.family, plan.theta0, m, derive_seed(base, t));
    fired[t] = decide(values, mvue(plan.family, feed), eta).choice == Action::A1 ? 1 : 0;
  });
  long count = 0;
  for (std::size_t t = 0; t < n; ++t) count += fired[t];
  const double fpr = static_cast<double>(count) / static_cast<double>(n);

  // The efficient user first, then biased and noisy competitors. All probes
  // share one seed so every panel member sees the same feeds.
  std::vector<BeliefSpec> panel;
  panel.push_back({BeliefKind::Mvue, Vector(), 1.0});
  for (double b : {2.0, -2.0, 1.0}) {
    BeliefSpec spec;
    spec.kind = BeliefKind::Biased;
    spec.bias = Vector::Zero(r);
    spec.bias[0] = b;
    panel.push_back(spec);
  }
  for (double c : {4.0, 16.0, 64.0}) {
    BeliefSpec spec;
    spec.kind = BeliefKind::Inflated;
    spec.variance_multiplier = c;
    panel.push_back(spec);
  }

  std::vector<CurvePoint> curve;
  curve.push_back({0.0, fpr, proportion_half_width(fpr, plan.trials), plan.trials});
  const Seed probe_seed = derive_seed(base, kProbeStream);
  std::vector<double> probes(panel.size(), 0.0);
  parallel_for(panel.size(), plan.threads, [&](std::size_t k) {
    probes[k] = distinguishability_probe(plan.family, plan.theta, plan.theta_prime,
                                         panel[k], values, eta, m, plan.trials,
                                         probe_seed);
  });
  for (std::size_t k = 0; k < panel.size(); ++k)
    curve.push_back({static_cast<double>(k + 1), probes[k],
                     difference_half_width(plan.trials), plan.trials});
  return curve;
}

std::vector<CurvePoint> run_diversity_sweep(const ExperimentPlan& plan) {
  const int r = family_dim(plan.family);
  check_axes(plan);
  validate_theta(plan.family, plan.theta);
  if (plan.theta_prime.size() != r)
    throw ValidationError("mc: diversity_sweep needs theta_prime as the reference");
  if (plan.omega.empty())
    throw ValidationError("mc: diversity_sweep needs a non-empty omega");
  if (plan.kappa_points < 2)
    throw ValidationError("mc: kappa_points must be >= 2, got " +
                          std::to_string(plan.kappa_points));
  if (!(plan.kappa_max > 0.0))
    throw ValidationError("mc: kappa_max must be > 0, got " +
                          std::to_string(plan.kappa_max));

  FeasibleQuery query;
  query.family = plan.family;
  query.theta_ref = plan.theta_prime;
  query.epsilon = plan.epsilons[0];
  query.m = plan.ms[0];
  query.omega = plan.omega;

  Vector direction = Vector::Zero(r);
  for (int c : plan.omega) {
    if (c < 1 || c > r)
      throw ValidationError("mc: omega coordinate " + std::to_string(c) + " outside 1.." +
                            std::to_string(r));
    direction[c - 1] = 1.0;
  }

  std::vector<CurvePoint> curve;
  for (int j = 0; j < plan.kappa_points; ++j) {
    const double kappa = plan.kappa_max * j / (plan.kappa_points - 1);
    const Vector theta = plan.theta + kappa * direction;
    curve.push_back({kappa, feasibility_statistic(theta, query), 0.0, 1});
  }
  return curve;
}

std::vector<CurvePoint> run_cost_sweep(const ExperimentPlan& plan) {
  const int r = family_dim(plan.family);
  check_axes(plan);
  if (plan.theta_prime.size() != r)
    throw ValidationError("mc: cost_sweep needs theta_prime as the reference");

  FeasibleQuery query;
  query.family = plan.family;
  query.theta_ref = plan.theta_prime;
  query.m = plan.ms[0];
  query.omega = plan.reward.omega;

  auto eps = plan.epsilons;
  std::sort(eps.begin(), eps.end());
  std::vector<CurvePoint> curve;
  for (double e : eps) {
    query.epsilon = e;
    const RegCostReport report = cost_of_regulation(plan.reward, query, plan.grid);
    curve.push_back({e, report.cost, 0.0, 1});
  }
  return curve;
}

}  // namespace

std::string experiment_name(ExperimentId id) {
  switch (id) {
    case ExperimentId::FprCalibration: return "fpr_calibration";
    case ExperimentId::PowerCurve: return "power_curve";
    case ExperimentId::Unbiasedness: return "unbiasedness";
    case ExperimentId::ZTestEquivalence: return "z_test_equivalence";
    case ExperimentId::GullibilityPanel: return "gullibility_panel";
    case ExperimentId::DiversitySweep: return "diversity_sweep";
    case ExperimentId::CostSweep: return "cost_sweep";
  }
  throw ValidationError("mc: unknown experiment id");
}

ExperimentId experiment_from_name(const std::string& name) {
  for (ExperimentId id : {ExperimentId::FprCalibration, ExperimentId::PowerCurve,
                          ExperimentId::Unbiasedness, ExperimentId::ZTestEquivalence,
                          ExperimentId::GullibilityPanel, ExperimentId::DiversitySweep,
                          ExperimentId::CostSweep})
    if (experiment_name(id) == name) return id;
  throw ValidationError("mc: unknown experiment '" + name + "'");
}

std::vector<CurvePoint> run_experiment(const ExperimentPlan& plan) {
  validate_family(plan.family);
  if (is_stochastic(plan.id) && plan.trials < 100)
    throw ValidationError("mc: trials must be >= 100 for " + experiment_name(plan.id) +
                          ", got " + std::to_string(plan.trials));

  switch (plan.id) {
    case ExperimentId::FprCalibration: return run_rejection_rate(plan, false);
    case ExperimentId::PowerCurve: return run_rejection_rate(plan, true);
    case ExperimentId::Unbiasedness: return run_unbiasedness(plan);
    case ExperimentId::ZTestEquivalence: return run_ztest_equivalence(plan);
    case ExperimentId::GullibilityPanel: return run_gullibility_panel(plan);
    case ExperimentId::DiversitySweep: return run_diversity_sweep(plan);
    case ExperimentId::CostSweep: return run_cost_sweep(plan);
  }
  throw ValidationError("mc: unknown experiment id");
}

namespace {

/// Minimal parser for the claim grammar:
///   claim := "estimate" ("<=" | ">=") expr [ "for" "abscissa" (">=" | "<=") number ]
///   expr  := term { ("+" | "-") term }
///   term  := number | "abscissa" | "half_width"
struct ClaimParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit ClaimParser(const std::string& s) : text(s) {}

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool consume(const char* word) {
    skip_ws();
    const std::size_t len = std::string(word).size();
    if (text.compare(pos, len, word) != 0) return false;
    pos += len;
    return true;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  double number() {
    skip_ws();
    double value = 0.0;
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc())
      throw ValidationError("claim: expected a number at position " + std::to_string(pos) +
                            " in '" + text + "'");
    pos += static_cast<std::size_t>(res.ptr - begin);
    return value;
  }
};

}  // namespace

SummaryRecord summarize(const std::vector<CurvePoint>& curve, const std::string& claim) {
  if (claim.empty()) throw ValidationError("claim: must be non-empty");
  ClaimParser p(claim);
  if (!p.consume("estimate"))
    throw ValidationError("claim: must start with 'estimate' in '" + claim + "'");
  const bool upper = p.consume("<=");
  if (!upper && !p.consume(">="))
    throw ValidationError("claim: expected '<=' or '>=' in '" + claim + "'");

  // expr as (constant, abscissa coefficient, half_width coefficient)
  struct Term { int kind; double value; };  // 0 number, 1 abscissa, 2 half_width
  std::vector<Term> terms;
  double sign = 1.0;
  for (;;) {
    if (p.consume("abscissa"))
      terms.push_back({1, sign});
    else if (p.consume("half_width"))
      terms.push_back({2, sign});
    else
      terms.push_back({0, sign * p.number()});
    p.skip_ws();
    if (p.consume("+"))
      sign = 1.0;
    else if (p.consume("-"))
      sign = -1.0;
    else
      break;
  }

  bool has_condition = false;
  bool cond_lower = true;
  double cond_value = 0.0;
  if (p.consume("for")) {
    if (!p.consume("abscissa"))
      throw ValidationError("claim: condition must constrain 'abscissa' in '" + claim + "'");
    cond_lower = p.consume(">=");
    if (!cond_lower && !p.consume("<="))
      throw ValidationError("claim: expected '>=' or '<=' after 'for abscissa' in '" + claim +
                            "'");
    cond_value = p.number();
    has_condition = true;
  }
  if (!p.at_end())
    throw ValidationError("claim: trailing input at position " + std::to_string(p.pos) +
                          " in '" + claim + "'");

  SummaryRecord record;
  record.claim = claim;
  for (const CurvePoint& point : curve) {
    if (has_condition) {
      if (cond_lower && point.abscissa < cond_value) continue;
      if (!cond_lower && point.abscissa > cond_value) continue;
    }
    double rhs = 0.0;
    for (const Term& term : terms) {
      if (term.kind == 0) rhs += term.value;
      if (term.kind == 1) rhs += term.value * point.abscissa;
      if (term.kind == 2) rhs += term.value * point.half_width;
    }
    const bool ok = upper ? point.estimate <= rhs : point.estimate >= rhs;
    if (!ok) {
      record.passed = false;
      record.violations.push_back(point.abscissa);
    }
  }
  return record;
}

}  // namespace faudit
