#pragma once

#include <stdexcept>
#include <string>

namespace finsler {

/// Bad argument to a public operation (wrong order, bad index, empty input).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation outside the region where a quantity is defined: jet division by
/// zero, sqrt of a non-positive value, warped chart too close to a pole.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The metric is not a Finsler metric at the requested line element
/// (fundamental tensor not positive definite, Randers norm of b >= 1, ...).
class InvalidMetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flag with transverse edge (numerically) parallel to the flagpole.
class DegenerateFlag : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested case outside what the closed forms cover.
class UnsupportedCase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Metric or report file that does not match its schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace finsler
