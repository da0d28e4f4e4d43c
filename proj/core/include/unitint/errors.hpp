// errors.hpp — exception types raised by the library
#pragma once

#include <stdexcept>
#include <string>

namespace unitint {

// Base of everything the library throws on a violated precondition or a
// numerical breakdown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Pure-z integration left the region where 1 + tr(z^dagger z) stays below the guard.
class SingularityEncountered : public Error {
 public:
  using Error::Error;
};

class StepSizeUnderflow : public Error {
 public:
  using Error::Error;
};

// |m3| too small for the z chart; the m representation is still fine.
class BaseSingularity : public Error {
 public:
  using Error::Error;
};

class NormalizationDrift : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

class PathInvalid : public Error {
 public:
  using Error::Error;
};

}  // namespace unitint
