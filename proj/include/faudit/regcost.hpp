#pragma once

#include "faudit/family.hpp"
#include "faudit/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace faudit {

/// Cartesian grid over parameter space: axes[i] lists the candidate values of
/// coordinate i+1. Iteration order is row-major (first axis slowest).
struct GridSpec {
  std::vector<std::vector<double>> axes;
};

/// Platform reward as a function of theta.
///  MeanOnly:    R(theta) = -(theta_1 - mu_star)^2; depends on the mean
///               coordinate only.
///  GeneralGrid: rewards tabulated over table_axes, row-major, evaluated by
///               nearest grid point.
/// `omega` lists 1-based coordinates the reward must be constant in; those
/// are the directions a platform can move along to restore feasibility
/// without giving up reward.
enum class RewardKind { MeanOnly, GeneralGrid };

struct RewardSpec {
  RewardKind kind = RewardKind::MeanOnly;
  double mu_star = 0.0;
  std::vector<int> omega;
  GridSpec table_axes;
  std::vector<double> table;
};

double reward_value(const RewardSpec& reward, const Vector& theta);

/// Membership query for the audit's asymptotic acceptance region around a
/// reference estimate. `omega` lists coordinates excluded from the
/// comparison: along those directions the reference is taken to co-move with
/// the candidate (a shift applied to every feed cancels out of the
/// counterfactual difference), so they contribute nothing to the statistic.
/// Leave it empty to compare all coordinates against a fixed reference.
struct FeasibleQuery {
  FamilyDescriptor family;
  Vector theta_ref;
  double epsilon = 0.05;
  int m = 100;
  std::vector<int> omega;
};

/// The statistic the feasibility test compares against the audit threshold:
/// the information-weighted squared distance between theta and the reference,
/// with omega coordinates removed from the difference, weighted at theta.
double feasibility_statistic(const Vector& theta, const FeasibleQuery& query);

/// True iff theta would pass the audit against the reference in the large-m
/// limit: feasibility_statistic < audit_threshold.
bool is_feasible(const Vector& theta, const FeasibleQuery& query);

struct OptPoint {
  Vector theta;
  double reward = 0.0;
};

struct RegCostReport {
  OptPoint unconstrained;
  std::optional<OptPoint> constrained;
  double cost = 0.0;  // +infinity when the feasible set is empty
  bool feasible_set_empty = false;
};

/// Grid search for the reward-optimal theta with and without the audit
/// feasibility constraint; cost is the reward gap. Ties keep the first
/// (lexicographically earliest) grid point. An empty feasible set yields an
/// infinite cost, flagged rather than thrown, so sweeps over epsilon can
/// continue past infeasible levels.
RegCostReport cost_of_regulation(const RewardSpec& reward, const FeasibleQuery& query,
                                 const GridSpec& grid);

/// Searches along the diversity direction (the unit indicator of
/// reward.omega) for the smallest kappa >= 0 making theta_star + kappa *
/// indicator feasible, by doubling then bisection to 1e-6. The query's omega
/// is taken from the reward, so the reference co-moves and the shift leaves
/// the reward unchanged by construction; a finite kappa therefore certifies
/// that the audit constraint costs the platform nothing at theta_star.
/// Throws WitnessNotFoundError if no kappa below 1e9 works.
std::pair<double, Vector> diversity_witness(const RewardSpec& reward, const FeasibleQuery& query,
                                            const Vector& theta_star);

/// Signed diversity comparison v' (I(theta1) - I(theta0)) v of the parameters
/// behind two feeds, along direction v. Positive means theta1 carries more
/// information along v, i.e. the feed behind theta0 is the more diverse one.
double diversity_compare(const FamilyDescriptor& family, const Vector& theta0,
                         const Vector& theta1, const Vector& v);

}  // namespace faudit
