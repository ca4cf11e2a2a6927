#pragma once

#include <stdexcept>
#include <string>

namespace popmatch {

// Malformed or inconsistent input: bad syntax, invalid preference lists,
// capacity violations, unknown ids.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested operation is not defined (or deliberately not offered) for
// the instance's model or scenario flavor.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace popmatch
