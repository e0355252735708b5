#pragma once

#include <stdexcept>
#include <string>

namespace ecc {

/// Argument or evaluation point outside the admissible domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class IntegrationFailure {
  MaxStepsExceeded,
  StepSizeUnderflow,
  NonFiniteState,
};

[[nodiscard]] inline const char* to_string(IntegrationFailure f) {
  switch (f) {
    case IntegrationFailure::MaxStepsExceeded:
      return "max_steps_exceeded";
    case IntegrationFailure::StepSizeUnderflow:
      return "step_size_underflow";
    case IntegrationFailure::NonFiniteState:
      return "non_finite_state";
  }
  return "unknown";
}

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(IntegrationFailure kind, double at, const std::string& what)
      : std::runtime_error(what), kind_(kind), at_(at) {}

  [[nodiscard]] IntegrationFailure kind() const noexcept { return kind_; }
  /// Abscissa at which the integrator gave up.
  [[nodiscard]] double at() const noexcept { return at_; }

 private:
  IntegrationFailure kind_;
  double at_;
};

/// A sampled angle trajectory is too coarse to certify a mod-pi bookkeeping.
class RefinementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical identity that must hold (monotonicity, exact residual,
/// simple roots) was found violated.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ecc
