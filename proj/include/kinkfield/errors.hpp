#pragma once

#include <stdexcept>
#include <string>

namespace kinkfield {

/// Invalid model parameters, grids, or other preconditions.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponential growth fit rejected (zero crossing, no exponential regime, poor r²).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A check that can only fail if the implementation itself is wrong.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kinkfield
