#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tadpole {

/// Bad argument or configuration supplied by the caller (CLI exit code 2).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Index outside the lattice or qubit register.
class IndexError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Operands act on different qubit counts.
class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Argument outside the mathematical domain of an operation (e.g. u <= 0).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical failure (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An analytically excluded condition was observed at runtime.
class ConsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An iteration ran out of budget; carries the residual trace.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residuals)
      : NumericalError(what), residuals_(std::move(residuals)) {}

  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

}  // namespace tadpole
