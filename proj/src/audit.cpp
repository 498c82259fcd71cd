#include "faudit/audit.hpp"

#include "faudit/parallel.hpp"
#include "faudit/rng.hpp"
#include "faudit/special.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace faudit {

namespace {

Vector estimate(const AuditConfig& config, const Feed& feed) {
  return config.estimator == EstimatorId::Mvue ? mvue(config.family, feed)
                                               : mle(config.family, feed);
}

void require_finite_estimate(const Vector& theta, const std::string& which) {
  if (!theta.allFinite())
    throw AuditError("audit: non-finite estimate for " + which + " feed", theta);
}

AuditVerdict audit_one_direction(const AuditConfig& config, const FeedOracle& oracle,
                                 const std::string& x, const std::string& x_prime,
                                 Seed call_seed) {
  const Feed z = oracle.feed(x, config.m, derive_seed(call_seed, 0));
  const Feed z_prime = oracle.feed(x_prime, config.m, derive_seed(call_seed, 1));
  if (z.size() != config.m)
    throw ProtocolError("audit: oracle returned " + std::to_string(z.size()) + " items for '" + x +
                        "', expected " + std::to_string(config.m));
  if (z_prime.size() != config.m)
    throw ProtocolError("audit: oracle returned " + std::to_string(z_prime.size()) +
                        " items for '" + x_prime + "', expected " + std::to_string(config.m));

  AuditVerdict verdict;
  verdict.theta_tilde = estimate(config, z);
  verdict.theta_tilde_prime = estimate(config, z_prime);
  require_finite_estimate(verdict.theta_tilde, "'" + x + "'");
  require_finite_estimate(verdict.theta_tilde_prime, "'" + x_prime + "'");

  verdict.statistic = audit_statistic(config, verdict.theta_tilde, verdict.theta_tilde_prime);
  verdict.threshold = audit_threshold(config.family, config.m, config.epsilon);
  verdict.hypothesis =
      verdict.statistic >= verdict.threshold ? Hypothesis::H1 : Hypothesis::H0;
  return verdict;
}

}  // namespace

void validate_audit_config(const AuditConfig& config) {
  validate_family(config.family);
  if (!(config.epsilon >= 0.0 && config.epsilon <= 1.0))
    throw ValidationError("epsilon must lie in [0, 1], got " + std::to_string(config.epsilon));
  const int min_m = config.family.id == FamilyId::Gaussian1D ? 2 : 1;
  if (config.m < min_m)
    throw ValidationError("m must be >= " + std::to_string(min_m) + " for " +
                          family_name(config.family) + ", got " + std::to_string(config.m));
  if (config.info_point == InfoPoint::AtOracleTheta) {
    if (!config.oracle_theta)
      throw ValidationError("info_point at_oracle_theta requires oracle_theta");
    require_interior(config.family, *config.oracle_theta);
  }
}

double audit_threshold(const FamilyDescriptor& family, int m, double epsilon) {
  validate_family(family);
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw ValidationError("epsilon must lie in [0, 1], got " + std::to_string(epsilon));
  if (m < 1) throw ValidationError("m must be >= 1, got " + std::to_string(m));
  if (epsilon == 0.0) return std::numeric_limits<double>::infinity();
  const int r = family_dim(family);
  return 2.0 / m * chi2_quantile(r, 1.0 - epsilon);
}

double audit_statistic(const AuditConfig& config, const Vector& theta_tilde,
                       const Vector& theta_tilde_prime) {
  const int r = family_dim(config.family);
  if (theta_tilde.size() != r || theta_tilde_prime.size() != r)
    throw DomainError("audit statistic: estimates must have length " + std::to_string(r));

  Vector point;
  switch (config.info_point) {
    case InfoPoint::AtThetaTilde:
      point = theta_tilde;
      break;
    case InfoPoint::AtMidpoint:
      point = 0.5 * (theta_tilde + theta_tilde_prime);
      break;
    case InfoPoint::AtOracleTheta:
      if (!config.oracle_theta)
        throw ValidationError("info_point at_oracle_theta requires oracle_theta");
      point = *config.oracle_theta;
      break;
  }
  const Matrix info = fisher_information(config.family, clamp_to_interior(config.family, point));
  const Vector d = theta_tilde - theta_tilde_prime;
  return d.dot(info * d);
}

AuditVerdict audit_pair(const AuditConfig& config, const FeedOracle& oracle,
                        const CounterfactualPair& pair) {
  return audit_pair(config, oracle, pair, config.seed);
}

AuditVerdict audit_pair(const AuditConfig& config, const FeedOracle& oracle,
                        const CounterfactualPair& pair, Seed call_seed) {
  validate_audit_config(config);
  return audit_one_direction(config, oracle, pair.x, pair.x_prime, derive_seed(call_seed, 0));
}

AuditVerdict audit_symmetrized(const AuditConfig& config, const FeedOracle& oracle,
                               const CounterfactualPair& pair) {
  return audit_symmetrized(config, oracle, pair, config.seed);
}

AuditVerdict audit_symmetrized(const AuditConfig& config, const FeedOracle& oracle,
                               const CounterfactualPair& pair, Seed call_seed) {
  validate_audit_config(config);
  const AuditVerdict forward =
      audit_one_direction(config, oracle, pair.x, pair.x_prime, derive_seed(call_seed, 0));
  const AuditVerdict reverse =
      audit_one_direction(config, oracle, pair.x_prime, pair.x, derive_seed(call_seed, 1));
  AuditVerdict verdict = forward.statistic >= reverse.statistic ? forward : reverse;
  if (forward.hypothesis == Hypothesis::H1 || reverse.hypothesis == Hypothesis::H1)
    verdict.hypothesis = Hypothesis::H1;
  return verdict;
}

BatchVerdict audit_batch(const AuditConfig& config, const FeedOracle& oracle,
                         const std::vector<CounterfactualPair>& pairs, double alpha,
                         unsigned threads, bool symmetrized) {
  validate_audit_config(config);
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ValidationError("alpha must lie in [0, 1], got " + std::to_string(alpha));
  if (pairs.empty()) throw ValidationError("audit batch: pair set must be non-empty");
  if (threads > 1 && !oracle.concurrent_safe()) threads = 1;

  BatchVerdict batch;
  batch.alpha = alpha;
  batch.per_pair.resize(pairs.size());

  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    const Seed call_seed = derive_seed(config.seed, i);
    try {
      batch.per_pair[i] = symmetrized ? audit_symmetrized(config, oracle, pairs[i], call_seed)
                                      : audit_pair(config, oracle, pairs[i], call_seed);
    } catch (const AuditError& e) {
      throw AuditError("pair '" + pairs[i].label + "': " + e.what(), e.estimate());
    } catch (const Error& e) {
      throw AuditError("pair '" + pairs[i].label + "': " + e.what());
    }
  });

  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (batch.per_pair[i].hypothesis == Hypothesis::H1) ++batch.h1_count;
  batch.passed = batch.h1_count <= alpha * static_cast<double>(pairs.size());
  return batch;
}

}  // namespace faudit
