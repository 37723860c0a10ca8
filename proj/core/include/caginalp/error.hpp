#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace caginalp {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its admissible range (step size above
/// the solvability threshold, infeasible initial data, bad arguments).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Two fields or trajectories that must live on one grid do not.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// An iterative method ran out of iterations. Carries the residual history
/// so the caller can write it to diagnostics.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residuals)
      : Error(what), residuals_(std::move(residuals)) {}

  const std::vector<double>& residuals() const noexcept { return residuals_; }
  double final_residual() const noexcept {
    return residuals_.empty() ? 0.0 : residuals_.back();
  }

 private:
  std::vector<double> residuals_;
};

/// Configuration validation failure; `field` is the dotted JSON path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace caginalp
