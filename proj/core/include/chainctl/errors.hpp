#pragma once

#include <stdexcept>
#include <string>

namespace chainctl {

/// Argument outside the documented domain of an operation (n > N, alpha > 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operands built for different subspaces or with incompatible sizes.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to converge or produced an invalid result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chainctl
