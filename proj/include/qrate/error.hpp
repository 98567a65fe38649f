#pragma once

#include <stdexcept>
#include <string>

namespace qrate {

/// Raised when an input violates a documented precondition or invariant.
/// `field()` names the offending parameter so front ends can report it.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Raised when a computation produces a non-finite value or loses accuracy.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qrate
