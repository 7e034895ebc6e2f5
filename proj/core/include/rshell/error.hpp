#pragma once

#include <stdexcept>
#include <string>

namespace rshell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// a1 x a2 vanishes (or nearly so) at an evaluation point.
class DegenerateParametrization : public Error {
 public:
  using Error::Error;
};

/// Evaluation point outside the parameter domain.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

/// Finite-difference stencil does not fit inside the parameter domain.
class StencilError : public Error {
 public:
  using Error::Error;
};

/// Matrix is singular or has non-positive determinant where det > 0 is required.
class SingularInput : public Error {
 public:
  using Error::Error;
};

/// Matrix passed to axl() is not skew-symmetric within tolerance.
class NonSkewInput : public Error {
 public:
  using Error::Error;
};

/// Invalid argument (bad moduli, thickness coordinate outside the shell, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Neighbouring nodal rotations differ by more than the mesh can resolve.
class MeshResolutionError : public Error {
 public:
  using Error::Error;
};

/// Material failed its positivity conditions while strict validation was requested.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Problem definition file is malformed or semantically invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Optimizer could not make progress or produced a non-finite energy.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace rshell
