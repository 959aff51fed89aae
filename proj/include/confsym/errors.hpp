#pragma once

#include <stdexcept>
#include <string>

namespace confsym {

// Base of every error thrown by the engine. The C API maps each subclass to a
// distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Weight shift at which an equivariant quantization fails to exist or to be
// unique.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

class WeightMismatch : public Error {
 public:
  using Error::Error;
};

// Exponent, word length, or solver size beyond the supported range.
class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A linear system that was expected to have exactly one solution has none or
// several.
class NoSolution : public Error {
 public:
  using Error::Error;
};

}  // namespace confsym
