#pragma once

#include <stdexcept>
#include <string>

namespace abelcs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on data that violates its stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal certificate did not verify (construction step failed).
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// Malformed scalar strings or instance files.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace abelcs
