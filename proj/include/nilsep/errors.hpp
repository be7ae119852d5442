#pragma once

#include <stdexcept>
#include <string>

namespace nilsep {

/// An enumeration cap (ball size, orbit size, closure size) was exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke an operation's precondition (e.g. asked to separate conjugate elements).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The requested group or class is outside what the routine handles.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nilsep
