#pragma once

#include <stdexcept>
#include <string>

namespace qne {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct DuplicateTarget : Error {
  using Error::Error;
};
struct NotHermitian : Error {
  using Error::Error;
};
struct NotUnitary : Error {
  using Error::Error;
};
struct InvalidState : Error {
  using Error::Error;
};
struct InvalidChannel : Error {
  using Error::Error;
};
struct OutOfRange : Error {
  using Error::Error;
};
struct NoNegativeEigenvalues : Error {
  using Error::Error;
};
struct NonrealExpectation : Error {
  using Error::Error;
};
struct UnsupportedDim : Error {
  using Error::Error;
};
struct InfeasibleCalibration : Error {
  using Error::Error;
};
struct ZeroSurvival : Error {
  using Error::Error;
};
struct MissingSetting : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace qne
