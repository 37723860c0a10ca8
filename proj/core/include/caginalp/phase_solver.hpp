#pragma once

#include <span>
#include <vector>

#include "caginalp/grid.hpp"
#include "caginalp/linear_solver.hpp"
#include "caginalp/potential.hpp"

namespace caginalp {

/// How the Yosida parameter is chosen for a step of size h.
struct EpsSchedule {
  enum class Mode { TieToH, Fixed };

  Mode mode = Mode::TieToH;
  double value = 0.0;  ///< used by Fixed only

  static EpsSchedule tie_to_h() { return {Mode::TieToH, 0.0}; }
  static EpsSchedule fixed(double eps) { return {Mode::Fixed, eps}; }

  double resolve(double h) const { return mode == Mode::TieToH ? h : value; }
  bool operator==(const EpsSchedule&) const = default;
};

struct StepSolveConfig {
  EpsSchedule eps = EpsSchedule::tie_to_h();
  /// Stop when ||residual||_H <= newton_tol * ||g||_H (absolute if g = 0).
  double newton_tol = 1e-10;
  int newton_max_iter = 100;
  double backtrack_factor = 0.5;
  double min_step = 1.0 / 1048576.0;  // 2^-20
  CgOptions linear{};

  /// Throws ConfigError naming the offending field.
  void validate() const;
  bool operator==(const StepSolveConfig&) const = default;
};

struct StepSolveReport {
  int iterations = 0;
  double final_residual = 0.0;
  double eps_used = 0.0;
  std::size_t linear_iterations = 0;
  std::vector<double> residual_history;
};

struct PhaseSolution {
  Field phi;
  Field xi;
  StepSolveReport report;
};

/// 1 / ||pi'||_inf, the supremum of admissible step sizes (infinite when
/// pi is constant).
double step_size_threshold(const Potential& p);

/// Throws PreconditionError unless 0 < h < step_size_threshold(p).
void require_admissible_step(const Potential& p, double h);

/// min{1 - h ||pi'||, h}: coercivity constant of phi -> phi - h Lap phi +
/// h beta_eps(phi) + h pi(phi) in the V-norm.
double coercivity_constant(const Potential& p, double h);

/// Constant C(h) with ||phi_eps||_V <= C(h) ||g||_H obtained by testing the
/// regularized equation with phi_eps and applying Young's inequality.
double phase_energy_constant(const Potential& p, double h);

/// Solves phi - h Lap_N phi + h (beta_eps(phi) + pi(phi)) = g with
/// semismooth Newton and backtracking on the H-norm residual; returns
/// xi = beta_eps(phi) pointwise. `initial_guess` defaults to g.
PhaseSolution solve_phase_step(const Potential& p, double h, const Field& g,
                               const StepSolveConfig& cfg, const Field* initial_guess = nullptr);

struct ContinuationResult {
  std::vector<double> eps;
  std::vector<PhaseSolution> solutions;
  /// ||phi_{eps_k} - phi_{eps_{k+1}}||_H, one entry fewer than solutions.
  std::vector<double> cauchy_differences;
};

/// Solves the regularized problem for each eps in a strictly decreasing
/// list, warm-starting each solve from the previous phi.
ContinuationResult solve_eps_continuation(const Potential& p, double h, const Field& g,
                                          const StepSolveConfig& cfg,
                                          std::span<const double> eps_list);

}  // namespace caginalp
