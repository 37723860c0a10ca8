#pragma once

#include <cstddef>
#include <span>

#include "caginalp/grid.hpp"

namespace caginalp {

struct CgOptions {
  double relative_tolerance = 1e-10;
  /// 0 selects 10 * (point count).
  std::size_t max_iterations = 0;

  bool operator==(const CgOptions&) const = default;
};

struct CgReport {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Solves diag .* u - a * Lap_N u = rhs by diagonally preconditioned
/// conjugate gradients in the trapezoidal inner product, in which the
/// operator is self-adjoint. `diag` must be positive pointwise and a >= 0.
/// `u` holds the initial guess on entry. Convergence is measured in the
/// H-norm of the residual relative to ||rhs||_H. Throws ConvergenceError.
CgReport solve_shifted_laplacian(std::span<const double> diag, double a, const Field& rhs,
                                 Field& u, const CgOptions& options = {});

/// u - a * Lap_N u = rhs for a > 0. The initial guess is rhs itself, which
/// makes every CG residual mean-free: the solve conserves the integral of
/// rhs to rounding.
Field helmholtz_solve(double a, const Field& rhs, const CgOptions& options = {},
                      CgReport* report = nullptr);

}  // namespace caginalp
