#pragma once

#include "faudit/family.hpp"
#include "faudit/types.hpp"

#include <string>

namespace faudit {

/// How a simulated user turns a feed into a belief about theta.
///  Mvue:     the efficient unbiased estimate.
///  Biased:   MVUE plus a fixed bias vector.
///  Inflated: MVUE plus zero-mean noise scaled so each coordinate's variance
///            is multiplied by c >= 1 (c = 1 reproduces the MVUE exactly).
enum class BeliefKind { Mvue, Biased, Inflated };

struct BeliefSpec {
  BeliefKind kind = BeliefKind::Mvue;
  Vector bias;
  double variance_multiplier = 1.0;
};

std::string belief_name(const BeliefSpec& spec);

/// An affine payoff difference over beliefs: score(theta) = w . theta + c is
/// the advantage of action a1 over a0.
struct ActionValues {
  Vector weights;
  double intercept = 0.0;

  double score(const Vector& theta) const { return weights.dot(theta) + intercept; }
};

enum class Action { A0, A1 };

struct DecisionRecord {
  std::string query_id;
  Action choice = Action::A0;
  double score = 0.0;
  double eta = 0.0;
};

/// The belief a user with the given estimator forms from one feed. The noise
/// seed only matters for Inflated beliefs.
Vector form_belief(const BeliefSpec& spec, const FamilyDescriptor& family, const Feed& feed,
                   Seed noise_seed);

/// Threshold rule: choose a1 iff score(belief) > eta.
DecisionRecord decide(const ActionValues& values, const Vector& belief, double eta,
                      std::string query_id = std::string());

/// Calibrates the decision margin so that an MVUE-driven user at the null
/// parameter theta0 picks a1 with probability rho: eta is the empirical
/// (1 - rho)-quantile of the score over `trials` simulated feeds. Requires
/// theta0 to sit on the indifference boundary (score(theta0) = 0 within
/// 1e-9).
double calibrate_eta(const ActionValues& values, const FamilyDescriptor& family,
                     const Vector& theta0, int m, double rho, int trials, Seed seed);

/// Empirical distinguishability of two parameters through a user's decisions:
/// |P(a1 | theta) - P(a1 | theta_prime)| over `trials` paired simulations.
/// Higher means the user's choices leak more about which parameter generated
/// the feed.
double distinguishability_probe(const FamilyDescriptor& family, const Vector& theta,
                                const Vector& theta_prime, const BeliefSpec& belief,
                                const ActionValues& values, double eta, int m, int trials,
                                Seed seed);

}  // namespace faudit
