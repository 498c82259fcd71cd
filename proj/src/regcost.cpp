#include "faudit/regcost.hpp"

#include "faudit/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

namespace faudit {

namespace {

void check_omega(const std::vector<int>& omega, int r, const char* who) {
  for (int c : omega)
    if (c < 1 || c > r)
      throw ValidationError(std::string(who) + ": omega coordinate " + std::to_string(c) +
                            " outside 1.." + std::to_string(r));
}

void check_grid(const GridSpec& grid, int r, const char* who) {
  if (static_cast<int>(grid.axes.size()) != r)
    throw ValidationError(std::string(who) + ": grid must have " + std::to_string(r) +
                          " axes, got " + std::to_string(grid.axes.size()));
  for (std::size_t i = 0; i < grid.axes.size(); ++i)
    if (grid.axes[i].empty())
      throw ValidationError(std::string(who) + ": grid axis " + std::to_string(i + 1) +
                            " is empty");
}

std::size_t grid_size(const GridSpec& grid) {
  std::size_t n = 1;
  for (const auto& axis : grid.axes) n *= axis.size();
  return n;
}

Vector grid_point(const GridSpec& grid, std::size_t flat) {
  Vector theta(static_cast<Eigen::Index>(grid.axes.size()));
  for (std::size_t i = grid.axes.size(); i-- > 0;) {
    const std::size_t k = grid.axes[i].size();
    theta[static_cast<Eigen::Index>(i)] = grid.axes[i][flat % k];
    flat /= k;
  }
  return theta;
}

std::size_t nearest_index(const std::vector<double>& axis, double x) {
  std::size_t best = 0;
  double best_dist = std::fabs(axis[0] - x);
  for (std::size_t i = 1; i < axis.size(); ++i) {
    const double d = std::fabs(axis[i] - x);
    if (d < best_dist) {
      best = i;
      best_dist = d;
    }
  }
  return best;
}

void check_reward(const RewardSpec& reward, int r) {
  check_omega(reward.omega, r, "reward");
  if (reward.kind == RewardKind::MeanOnly) {
    for (int c : reward.omega)
      if (c == 1)
        throw ValidationError(
            "reward: a mean-only reward is not constant in coordinate 1; "
            "omega must not contain it");
    if (!std::isfinite(reward.mu_star))
      throw ValidationError("reward: target mean must be finite");
  } else {
    check_grid(reward.table_axes, r, "reward table");
    if (reward.table.size() != grid_size(reward.table_axes))
      throw ValidationError("reward: table has " + std::to_string(reward.table.size()) +
                            " entries, expected " + std::to_string(grid_size(reward.table_axes)));
  }
}

}  // namespace

double reward_value(const RewardSpec& reward, const Vector& theta) {
  check_reward(reward, static_cast<int>(theta.size()));
  if (reward.kind == RewardKind::MeanOnly) {
    const double d = theta[0] - reward.mu_star;
    return -d * d;
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < reward.table_axes.axes.size(); ++i) {
    flat = flat * reward.table_axes.axes[i].size() +
           nearest_index(reward.table_axes.axes[i], theta[static_cast<Eigen::Index>(i)]);
  }
  return reward.table[flat];
}

double feasibility_statistic(const Vector& theta, const FeasibleQuery& query) {
  const int r = family_dim(query.family);
  check_omega(query.omega, r, "feasibility");
  if (query.theta_ref.size() != r)
    throw ValidationError("feasibility: reference must have length " + std::to_string(r));
  validate_theta(query.family, theta);

  Vector d = theta - query.theta_ref;
  for (int c : query.omega) d[c - 1] = 0.0;
  const Matrix info = fisher_information(query.family, clamp_to_interior(query.family, theta));
  return d.dot(info * d);
}

bool is_feasible(const Vector& theta, const FeasibleQuery& query) {
  return feasibility_statistic(theta, query) <
         audit_threshold(query.family, query.m, query.epsilon);
}

RegCostReport cost_of_regulation(const RewardSpec& reward, const FeasibleQuery& query,
                                 const GridSpec& grid) {
  const int r = family_dim(query.family);
  check_reward(reward, r);
  check_grid(grid, r, "cost_of_regulation");

  RegCostReport report;
  bool have_any = false;
  const std::size_t n = grid_size(grid);
  for (std::size_t flat = 0; flat < n; ++flat) {
    const Vector theta = grid_point(grid, flat);
    validate_theta(query.family, theta);
    const double value = reward_value(reward, theta);
    if (!have_any || value > report.unconstrained.reward) {
      report.unconstrained = {theta, value};
      have_any = true;
    }
    if (is_feasible(theta, query) &&
        (!report.constrained || value > report.constrained->reward))
      report.constrained = OptPoint{theta, value};
  }

  if (report.constrained) {
    report.cost = report.unconstrained.reward - report.constrained->reward;
  } else {
    report.cost = std::numeric_limits<double>::infinity();
    report.feasible_set_empty = true;
  }
  return report;
}

std::pair<double, Vector> diversity_witness(const RewardSpec& reward, const FeasibleQuery& query,
                                            const Vector& theta_star) {
  const int r = family_dim(query.family);
  check_reward(reward, r);
  if (reward.omega.empty())
    throw ValidationError("diversity witness: reward.omega must be non-empty");
  require_interior(query.family, theta_star);

  Vector direction = Vector::Zero(r);
  for (int c : reward.omega) direction[c - 1] = 1.0;

  FeasibleQuery co_moving = query;
  co_moving.omega = reward.omega;

  const double base_reward = reward_value(reward, theta_star);
  auto inflated = [&](double kappa) { return Vector(theta_star + kappa * direction); };
  auto feasible_at = [&](double kappa) {
    const Vector theta = inflated(kappa);
    try {
      validate_theta(query.family, theta);
    } catch (const DomainError&) {
      return false;
    }
    if (reward_value(reward, theta) != base_reward)
      throw ValidationError("diversity witness: reward varies along omega");
    return is_feasible(theta, co_moving);
  };

  if (feasible_at(0.0)) return {0.0, theta_star};

  double lo = 0.0;
  double hi = 1.0;
  while (!feasible_at(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e9)
      throw WitnessNotFoundError(
          "diversity witness: no feasible inflation below 1e9; the audit "
          "constraint binds in a direction the reward does not span");
  }
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (feasible_at(mid))
      hi = mid;
    else
      lo = mid;
  }
  return {hi, inflated(hi)};
}

double diversity_compare(const FamilyDescriptor& family, const Vector& theta0,
                         const Vector& theta1, const Vector& v) {
  require_interior(family, theta0);
  require_interior(family, theta1);
  const int r = family_dim(family);
  if (v.size() != r)
    throw DomainError("diversity_compare: direction must have length " + std::to_string(r));
  const Matrix diff = fisher_information(family, theta1) - fisher_information(family, theta0);
  return v.dot(diff * v);
}

}  // namespace faudit
