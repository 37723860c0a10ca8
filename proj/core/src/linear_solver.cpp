#include "caginalp/linear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "caginalp/error.hpp"

namespace caginalp {

namespace {

double weighted_dot(const Grid& g, std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) sum += g.weight(k) * x[k] * y[k];
  return sum;
}

}  // namespace

CgReport solve_shifted_laplacian(std::span<const double> diag, double a, const Field& rhs,
                                 Field& u, const CgOptions& options) {
  const Grid& g = rhs.grid();
  require_same_grid(g, u.grid(), "solve_shifted_laplacian");
  const std::size_t n = g.size();
  if (diag.size() != n) throw PreconditionError("solve_shifted_laplacian: diagonal size mismatch");
  if (!(a >= 0.0)) throw PreconditionError("solve_shifted_laplacian: a must be nonnegative");

  const std::size_t max_iter = options.max_iterations ? options.max_iterations : 10 * n;
  const double rhs_norm = std::sqrt(weighted_dot(g, rhs.values(), rhs.values()));
  if (rhs_norm == 0.0) {
    std::fill(u.values().begin(), u.values().end(), 0.0);
    return {};
  }
  const double target = options.relative_tolerance * rhs_norm;

  double stencil_diag = 2.0 / (g.spacing(0) * g.spacing(0));
  if (g.dim() == 2) stencil_diag += 2.0 / (g.spacing(1) * g.spacing(1));

  std::vector<double> r(n), z(n), p(n), q(n), inv_m(n);
  for (std::size_t k = 0; k < n; ++k) inv_m[k] = 1.0 / (diag[k] + a * stencil_diag);

  auto apply = [&](std::span<const double> x, std::span<double> out) {
    apply_neumann_laplacian(g, x, out);
    for (std::size_t k = 0; k < n; ++k) out[k] = diag[k] * x[k] - a * out[k];
  };

  apply(u.values(), q);
  for (std::size_t k = 0; k < n; ++k) r[k] = rhs[k] - q[k];
  double res = std::sqrt(weighted_dot(g, r, r));
  std::vector<double> history{res / rhs_norm};
  if (res <= target) return {0, res / rhs_norm};

  for (std::size_t k = 0; k < n; ++k) z[k] = inv_m[k] * r[k];
  p = z;
  double rho = weighted_dot(g, r, z);

  for (std::size_t it = 1; it <= max_iter; ++it) {
    apply(p, q);
    const double alpha = rho / weighted_dot(g, p, q);
    for (std::size_t k = 0; k < n; ++k) {
      u[k] += alpha * p[k];
      r[k] -= alpha * q[k];
    }
    res = std::sqrt(weighted_dot(g, r, r));
    if (history.size() < 64) history.push_back(res / rhs_norm);
    if (res <= target) return {it, res / rhs_norm};
    for (std::size_t k = 0; k < n; ++k) z[k] = inv_m[k] * r[k];
    const double rho_next = weighted_dot(g, r, z);
    const double beta = rho_next / rho;
    rho = rho_next;
    for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
  }
  history.push_back(res / rhs_norm);
  throw ConvergenceError("conjugate gradients: no convergence after " + std::to_string(max_iter) +
                             " iterations, relative residual " + std::to_string(res / rhs_norm),
                         std::move(history));
}

Field helmholtz_solve(double a, const Field& rhs, const CgOptions& options, CgReport* report) {
  if (!(a > 0.0)) throw PreconditionError("helmholtz_solve: a must be positive");
  Field u = rhs;
  const std::vector<double> ones(rhs.size(), 1.0);
  const CgReport r = solve_shifted_laplacian(ones, a, rhs, u, options);
  if (report) *report = r;
  return u;
}

}  // namespace caginalp
