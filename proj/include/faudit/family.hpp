#pragma once

#include "faudit/types.hpp"

#include <string>

namespace faudit {

enum class FamilyId { Gaussian1D, GaussianKnownVar, Bernoulli, Poisson };

/// Identifies one of the shipped exponential families. All four emit scalar
/// content; Gaussian1D carries two parameters (mean, variance), the others
/// one. GaussianKnownVar fixes the variance at construction and estimates
/// only the mean.
struct FamilyDescriptor {
  FamilyId id = FamilyId::Gaussian1D;
  double known_variance = 1.0;
};

/// Dimension r of the natural parameterization used throughout.
int family_dim(const FamilyDescriptor& family);

/// Stable lowercase identifier used in configs and reports.
std::string family_name(const FamilyDescriptor& family);

/// The standard regularity conditions this family satisfies, for reports.
std::string regularity_notes(const FamilyDescriptor& family);

/// Rejects descriptors with invalid fixed constants (known_variance <= 0).
void validate_family(const FamilyDescriptor& family);

/// Membership in the closure of the parameter space: sampling is defined
/// here (a zero-variance Gaussian is a constant feed; a Bernoulli rate of 0
/// or 1 is a constant feed). Throws DomainError naming the violated
/// constraint otherwise.
void validate_theta(const FamilyDescriptor& family, const Vector& theta);

/// Membership in the open interior, where the information matrix and log
/// density are defined. Throws SingularityError on the boundary and
/// DomainError outside the closure.
void require_interior(const FamilyDescriptor& family, const Vector& theta);

/// Pulls boundary coordinates inward by `margin` so downstream information
/// evaluations stay finite; interior points pass through unchanged.
Vector clamp_to_interior(const FamilyDescriptor& family, Vector theta, double margin = 1e-9);

/// Draws an i.i.d. feed of m items. Deterministic in (family, theta, m, seed).
Feed sample_feed(const FamilyDescriptor& family, const Vector& theta, int m, Seed seed);

/// Minimum-variance unbiased estimate of theta from a feed. Gaussian1D needs
/// m >= 2 (sample variance with the m-1 divisor); the scalar-mean families
/// need m >= 1.
Vector mvue(const FamilyDescriptor& family, const Feed& feed);

/// Maximum-likelihood estimate; differs from the MVUE only in the Gaussian1D
/// variance coordinate (divisor m instead of m-1).
Vector mle(const FamilyDescriptor& family, const Feed& feed);

/// Fisher information matrix of a single observation at an interior theta.
Matrix fisher_information(const FamilyDescriptor& family, const Vector& theta);

/// Log density (or log mass) of one content item z at an interior theta.
double log_density(const FamilyDescriptor& family, const Vector& theta, const Vector& z);

/// Sampling variance of each MVUE coordinate at theta for feeds of length m.
/// Used to scale calibrated estimator noise.
Vector mvue_sampling_variance(const FamilyDescriptor& family, const Vector& theta, int m);

}  // namespace faudit
