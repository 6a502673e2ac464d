#pragma once

#include <stdexcept>

namespace ptscatter {

/// Bad flags, configuration or operation preconditions. CLI exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Truncation half-width does not cover the potential's numerical support.
class DomainTooSmallError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Amplitude evaluation requested at the k = 0 threshold, where Gamma(-ik)
/// has a kinematic pole that is not a property of the potential.
class ThresholdError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// log_gamma requested on the Gamma pole set (non-positive integers).
class GammaPoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Spectral-singularity solve produced a non-positive resonant energy.
class PositivityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iteration budget exhausted before meeting the convergence target.
/// CLI exit code 2.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root iteration trapped near the k = 0 threshold. CLI exit code 2.
class StagnationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptscatter
