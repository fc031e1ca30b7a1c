#pragma once

#include <stdexcept>
#include <string>

namespace qwle {

/// Argument outside the domain of a function (H outside (0,1), lambda = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quadrature or Fourier-coefficient computation did not produce a trustworthy value.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes disagree, or a dense operation exceeds its size cap.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input carries no information for the estimator (all zeros, constant, ...).
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A linear-algebra or optimizer step failed (singular matrix, no convergence, negative trace identity).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable file, malformed CSV, or bad command-line value.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qwle
