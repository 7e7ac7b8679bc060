#pragma once

#include <stdexcept>
#include <string>

namespace reluvol {

// Base of every error raised by the library. The CLI maps it to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Operands live in different ambient dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A mathematical precondition of the requested check does not hold.
// Reported as "inapplicable" (exit code 2), never as a failure.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check tripped. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace reluvol
