#pragma once

#include <stdexcept>
#include <string>

namespace qmc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotHermitian : Error {
  using Error::Error;
};

struct NotPsd : Error {
  using Error::Error;
};

struct SingularNegativePower : Error {
  using Error::Error;
};

struct NotAProjection : Error {
  using Error::Error;
};

struct NotUnital : Error {
  using Error::Error;
};

struct NoFixedPoint : Error {
  using Error::Error;
};

struct MissingInvariantState : Error {
  using Error::Error;
};

struct NotInvariant : Error {
  using Error::Error;
};

struct HorizonTooLarge : Error {
  using Error::Error;
};

struct NotStrictlyPositive : Error {
  using Error::Error;
};

}  // namespace qmc
