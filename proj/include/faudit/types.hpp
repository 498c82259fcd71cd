#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace faudit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Seed = std::uint64_t;

inline constexpr const char* kVersion = "0.1.0";

/// A feed of m content items, one row per item. Scalar families use a single
/// column; the container is a matrix so vector-valued content stays cheap to
/// pass around without copies.
struct Feed {
  Matrix items;

  Eigen::Index size() const { return items.rows(); }
  Eigen::Index dim() const { return items.cols(); }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A feed is too short for the requested estimator.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// A parameter sits on the boundary where the information matrix degenerates.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// A black-box respondent broke the query contract (wrong feed length,
/// unresolvable token, ...).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// A config document or experiment plan is structurally invalid.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A config document could not be parsed; the message carries the line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// No feasibility witness exists within the search budget.
class WitnessNotFoundError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure while reading input or emitting a report.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An audit run could not produce a verdict; carries the offending estimate
/// when one was computed.
class AuditError : public Error {
 public:
  explicit AuditError(const std::string& what, Vector estimate = Vector())
      : Error(what), estimate_(std::move(estimate)) {}

  const Vector& estimate() const { return estimate_; }

 private:
  Vector estimate_;
};

}  // namespace faudit
