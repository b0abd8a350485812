#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homog {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, bad schedules, windows larger than the box.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Admissibility failures of the input data (ellipticity, structure tags, Lipschitz probes).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A field produced a non-finite value during quadrature or evaluation.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Linear solver did not reach its tolerance within the iteration cap.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual, std::size_t iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

/// Non-finite state in a time integration.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A guarded precondition refused to run (e.g. a grid that does not resolve epsilon).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Scenario/run configuration could not be parsed or type-checked.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace homog
