#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace driftkin {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A parameter outside its documented domain (nonpositive frequency, bad p, ...).
class InvalidParameter : public Error {
public:
  using Error::Error;
};

/// The magnetic field dropped to or below its lower bound alpha.
class ModelViolation : public Error {
public:
  using Error::Error;
};

/// Two grid-valued operands do not live on compatible grids.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Non-finite values in solver input.
class DataError : public Error {
public:
  using Error::Error;
};

class InsufficientData : public Error {
public:
  using Error::Error;
};

/// The parallel solvability condition failed; carries the residual norm.
class NotSolvable : public Error {
public:
  NotSolvable(const std::string& what, double residual_norm)
      : Error(what), residual_norm_(residual_norm) {}
  double residual_norm() const { return residual_norm_; }

private:
  double residual_norm_;
};

/// Solver aborted mid-run (NaN, orbit left admissible region, ...).
class SolverFailure : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  explicit ConfigError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const { return messages_; }

private:
  std::vector<std::string> messages_;
};

}  // namespace driftkin
