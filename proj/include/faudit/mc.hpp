#pragma once

#include "faudit/audit.hpp"
#include "faudit/decision.hpp"
#include "faudit/family.hpp"
#include "faudit/regcost.hpp"
#include "faudit/types.hpp"

#include <string>
#include <vector>

namespace faudit {

/// The experiments the harness can run.
///  FprCalibration:  rejection rate of the audit on a compliant platform,
///                   swept over epsilon or m.
///  PowerCurve:      rejection rate against a platform that maps the two
///                   tokens to different parameters.
///  Unbiasedness:    standardized bias of the estimator at each listed theta.
///  ZTestEquivalence: agreement indicator between the audit verdict and the
///                   two-sided two-sample z-test on random known-variance
///                   Gaussian instances.
///  GullibilityPanel: decision-model false-positive rate at the calibrated
///                   margin, plus distinguishability probes for the efficient
///                   user and a panel of biased/noisy competitors.
///  DiversitySweep:  the feasibility statistic along the variance-inflation
///                   path (deterministic).
///  CostSweep:       cost_of_regulation over a list of epsilons
///                   (deterministic).
enum class ExperimentId {
  FprCalibration,
  PowerCurve,
  Unbiasedness,
  ZTestEquivalence,
  GullibilityPanel,
  DiversitySweep,
  CostSweep
};

std::string experiment_name(ExperimentId id);
ExperimentId experiment_from_name(const std::string& name);

struct ExperimentPlan {
  ExperimentId id = ExperimentId::FprCalibration;
  FamilyDescriptor family;
  Seed master_seed = 0;
  int trials = 10000;
  unsigned threads = 1;

  /// Sweep axes for the audit experiments; at most one may hold more than
  /// one value. CostSweep sweeps epsilons.
  std::vector<double> epsilons = {0.05};
  std::vector<int> ms = {100};

  EstimatorId estimator = EstimatorId::Mvue;
  InfoPoint info_point = InfoPoint::AtThetaTilde;

  Vector theta;               // null/compliant parameter; DiversitySweep start
  Vector theta_prime;         // alternative parameter or feasibility reference
  std::vector<Vector> thetas; // Unbiasedness evaluation points

  // Decision-model settings (GullibilityPanel).
  double rho = 0.05;
  int calibration_trials = 100000;
  Vector theta0;              // indifference-boundary parameter
  Vector value_weights;       // defaults to the first coordinate axis
  double value_intercept = 0.0;

  // DiversitySweep settings.
  std::vector<int> omega;
  double kappa_max = 10.0;
  int kappa_points = 100;

  // CostSweep settings.
  RewardSpec reward;
  GridSpec grid;
};

/// One point of an experiment curve. half_width is the 99% normal-theory
/// interval for proportion-valued estimates (floored at 1/trials) and 0 for
/// deterministic or standardized quantities.
struct CurvePoint {
  double abscissa = 0.0;
  double estimate = 0.0;
  double half_width = 0.0;
  long trials = 0;
};

/// Runs the planned experiment. Stochastic experiments derive every trial's
/// seed as (master_seed, experiment id, trial index), so the curve is a pure
/// function of the plan regardless of thread count; deterministic experiments
/// ignore trials/threads. Points come back sorted by abscissa.
std::vector<CurvePoint> run_experiment(const ExperimentPlan& plan);

/// Result of checking a curve against a claim.
struct SummaryRecord {
  std::string claim;
  bool passed = true;
  std::vector<double> violations;  // abscissas of failing points
};

/// Evaluates a claim of the form
///   "estimate <= expr"  or  "estimate >= expr" [" for abscissa >= c"]
/// where expr is a sum/difference of numbers, "abscissa" and "half_width"
/// terms, against every point of the curve. Empty or malformed claims are
/// validation errors.
SummaryRecord summarize(const std::vector<CurvePoint>& curve, const std::string& claim);

}  // namespace faudit
