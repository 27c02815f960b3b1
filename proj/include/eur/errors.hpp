#pragma once

#include <stdexcept>
#include <string>

namespace eur {

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a numerical procedure fails to reach its requested accuracy.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The integration window needed to keep the neglected tail mass below the
/// budget is larger than the allowed maximum.
class TruncationBudgetExceeded : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A computed entropy sum fell below a lower bound by more than numerical
/// noise can explain.
class InequalityViolation : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Malformed input files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eur
