#pragma once

#include <stdexcept>
#include <string>

namespace sagnac {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical input violates its domain (non-positive mass, empty cross-section, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Numerical failures. The CLI maps these to exit status 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The control field vanishes, so there is no EIT and no dark state to speak of.
class DegenerateEit : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The steady state under the trace constraint is not unique.
class DegenerateSteadyState : public NumericalError {
 public:
  DegenerateSteadyState(const std::string& what, int null_space_dimension)
      : NumericalError(what), null_space_dimension_(null_space_dimension) {}

  int null_space_dimension() const noexcept { return null_space_dimension_; }

 private:
  int null_space_dimension_;
};

class IntegrationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The optimizer's best point sits on the edge of its search box.
class BoundaryHit : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace sagnac
