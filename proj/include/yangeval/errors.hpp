#pragma once

#include <stdexcept>
#include <string>

namespace yangeval {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// A precondition on an input value (index range, dominance, parameter
/// constraint, malformed config) does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operator would produce a vector above the depth of a truncated module.
class TruncationOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace yangeval
