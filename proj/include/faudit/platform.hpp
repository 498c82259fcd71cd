#pragma once

#include "faudit/audit.hpp"
#include "faudit/family.hpp"
#include "faudit/types.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace faudit {

/// How a simulated platform maps query tokens to feed parameters.
///  Constant:    every token maps to the same theta (a compliant platform).
///  Lookup:      an explicit token -> theta table; unknown tokens are a
///               protocol violation.
///  AffineShift: theta(token) = base + weight(token) * delta, with weight 0
///               for unlisted tokens. This is the standard way to express a
///               graded treatment effect.
enum class MappingKind { Constant, Lookup, AffineShift };

struct PlatformSpec {
  FamilyDescriptor family;
  MappingKind mapping = MappingKind::Constant;

  Vector constant_theta;                  // Constant
  std::map<std::string, Vector> table;    // Lookup
  Vector base;                            // AffineShift
  Vector delta;                           // AffineShift
  std::map<std::string, double> weights;  // AffineShift

  /// Optional diversity inflation applied after the mapping: kappa is added
  /// to each listed coordinate (1-based) of every mapped theta.
  double inflation_kappa = 0.0;
  std::vector<int> inflation_coords;
};

/// The parameter a token resolves to, inflation included.
Vector mapped_theta(const PlatformSpec& spec, const std::string& token);

/// Validates the spec (every reachable theta must be sampleable) and wraps it
/// behind the black-box feed interface. The audit side only ever sees the
/// returned FeedOracle.
std::shared_ptr<const FeedOracle> make_platform(const PlatformSpec& spec);

/// Human-readable summary of a spec for reports. Never available through the
/// FeedOracle interface.
std::string describe_platform(const PlatformSpec& spec);

}  // namespace faudit
