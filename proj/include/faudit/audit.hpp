#pragma once

#include "faudit/family.hpp"
#include "faudit/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace faudit {

enum class EstimatorId { Mvue, Mle };

/// Where the information matrix is evaluated when forming the test statistic.
/// AtThetaTilde is the deployable default; AtMidpoint uses the average of the
/// two estimates; AtOracleTheta plugs in a caller-supplied true parameter and
/// exists to verify the test's nominal false-positive level.
enum class InfoPoint { AtThetaTilde, AtMidpoint, AtOracleTheta };

enum class Hypothesis { H0, H1 };

/// A pair of query tokens whose feeds a compliant platform must draw from the
/// same distribution.
struct CounterfactualPair {
  std::string x;
  std::string x_prime;
  std::string label;
};

struct AuditConfig {
  FamilyDescriptor family;
  double epsilon = 0.05;
  int m = 100;
  EstimatorId estimator = EstimatorId::Mvue;
  InfoPoint info_point = InfoPoint::AtThetaTilde;
  std::optional<Vector> oracle_theta;
  Seed seed = 0;
};

struct AuditVerdict {
  Hypothesis hypothesis = Hypothesis::H0;
  double statistic = 0.0;
  double threshold = 0.0;
  Vector theta_tilde;
  Vector theta_tilde_prime;
};

struct BatchVerdict {
  std::vector<AuditVerdict> per_pair;
  int h1_count = 0;
  double alpha = 0.0;
  bool passed = true;
};

/// Black-box access to the platform under audit: one feed per (token, length,
/// seed) query. Implementations advertising concurrent_safe() may be queried
/// from several threads at once.
class FeedOracle {
 public:
  virtual ~FeedOracle() = default;
  virtual Feed feed(const std::string& token, int m, Seed seed) const = 0;
  virtual bool concurrent_safe() const { return false; }
};

/// Rejects configs with epsilon outside [0, 1], m below the family's
/// estimator minimum, or a missing/mis-sized oracle point.
void validate_audit_config(const AuditConfig& config);

/// Decision threshold (2/m) * chi2_quantile(r, 1 - epsilon). epsilon = 0
/// yields +infinity (never reject); epsilon = 1 yields 0 (rejection even at a
/// statistic of exactly zero, by the >= rule).
double audit_threshold(const FamilyDescriptor& family, int m, double epsilon);

/// Information-weighted squared distance between the two estimates. The
/// evaluation point is clamped to the interior before weighting so boundary
/// estimates (for example a zero sample variance) stay finite.
double audit_statistic(const AuditConfig& config, const Vector& theta_tilde,
                       const Vector& theta_tilde_prime);

/// One counterfactual probe: draws fresh feeds for both tokens, estimates
/// both parameters, and compares the weighted distance to the threshold.
/// Every call uses freshly derived feed seeds, so repeated audits of the same
/// pair are independent probes.
AuditVerdict audit_pair(const AuditConfig& config, const FeedOracle& oracle,
                        const CounterfactualPair& pair);
AuditVerdict audit_pair(const AuditConfig& config, const FeedOracle& oracle,
                        const CounterfactualPair& pair, Seed call_seed);

/// Runs the probe in both token orders and rejects if either direction
/// rejects; the reported statistic and estimates come from the larger run.
AuditVerdict audit_symmetrized(const AuditConfig& config, const FeedOracle& oracle,
                               const CounterfactualPair& pair);
AuditVerdict audit_symmetrized(const AuditConfig& config, const FeedOracle& oracle,
                               const CounterfactualPair& pair, Seed call_seed);

/// Audits every pair (never short-circuiting) and passes iff the rejection
/// count stays within alpha * |pairs|. Per-pair seeds derive from
/// (config.seed, pair index), so results do not depend on thread count; a
/// thread budget above 1 requires oracle.concurrent_safe(). The first failing
/// pair (in index order) aborts the batch with its label attached.
BatchVerdict audit_batch(const AuditConfig& config, const FeedOracle& oracle,
                         const std::vector<CounterfactualPair>& pairs, double alpha,
                         unsigned threads = 1, bool symmetrized = false);

}  // namespace faudit
