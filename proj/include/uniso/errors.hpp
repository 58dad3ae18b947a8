#pragma once

#include <stdexcept>
#include <string>

namespace uniso {

/// Malformed input, violated precondition, or inadmissible parameters.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A recomputed fact disagrees with what was expected or claimed.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search or enumeration would exceed its configured work limit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uniso
