#pragma once

#include <stdexcept>
#include <string>

namespace studentt {

// Argument outside the mathematical domain of a function (x <= 0 for
// ln_gamma, a non-positive degrees-of-freedom value, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A pair of parameters that must be strictly ordered is not (p < q, y1 < y2).
class OrderingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input violates a documented precondition of a certifier.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// dmu_b = rho dmu_a failed validation.
class ConsistencyError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Requested operation is not available for this input kind.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace studentt
