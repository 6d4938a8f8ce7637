#pragma once

#include <stdexcept>
#include <string>

namespace imatch {

// Inputs whose sizes disagree with the market they are evaluated against.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Structurally invalid domain objects (duplicate ranks, broken mutuality, ...).
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive routines refuse inputs beyond their enumeration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}

  // Estimated amount of work the refused call would have done.
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace imatch
