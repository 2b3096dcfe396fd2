#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace condensate {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mass at or above the critical mass where a smooth steady state is requested.
class SupercriticalMass : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Density/grid data that cannot be turned into a valid profile.
class InvalidDensity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MassInconsistency : public InvalidDensity {
 public:
  using InvalidDensity::InvalidDensity;
};

/// Logarithmic diffusion evaluated at a vanishing slope with eps = 0.
class LogSingularity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton iteration failed to reach the residual tolerance.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double residual, std::size_t step = 0)
      : std::runtime_error(what), residual_(residual), step_(step) {}

  double residual() const noexcept { return residual_; }
  std::size_t step() const noexcept { return step_; }

 private:
  double residual_;
  std::size_t step_;
};

/// Invalid configuration text or manifest; `line` is 0 when not line-bound.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace condensate
