#pragma once

#include <stdexcept>
#include <string>

namespace structdiv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input failed validation (malformed measure, bad kernel, dimension mismatch).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Bad call shape: empty lists, out-of-range indices, arity mismatch.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A user-supplied generator produced NaN or violated f(1) = 0.
class InvalidGeneratorError : public Error {
 public:
  using Error::Error;
};

/// Linear algebra failure or an unexpectedly complex trace.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A proven inequality was observed violated. Signals a bug, not bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace structdiv
