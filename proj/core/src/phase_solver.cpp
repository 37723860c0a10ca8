#include "caginalp/phase_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "caginalp/error.hpp"

namespace caginalp {

namespace {

// Residual F(phi) = phi - h Lap phi + h (beta_eps(phi) + pi(phi)) - g, and
// the Jacobian diagonal 1 + h (beta_eps'(phi) + pi'(phi)).
struct ResidualEval {
  Field residual;
  std::vector<double> jacobian_diag;
  double norm;
};

ResidualEval evaluate_residual(const Potential& p, double h, double eps, const Field& g,
                               const Field& phi) {
  ResidualEval out{neumann_laplacian(phi), std::vector<double>(phi.size()), 0.0};
  Field& res = out.residual;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const YosidaPoint y = yosida_point(p, eps, phi[k]);
    res[k] = phi[k] - h * res[k] + h * (y.value + pi_eval(p, phi[k])) - g[k];
    out.jacobian_diag[k] = 1.0 + h * (y.slope + pi_slope(p, phi[k]));
  }
  out.norm = norm_h(res);
  return out;
}

std::string format_history(const std::vector<double>& history) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < history.size(); ++i) os << (i ? ", " : "") << history[i];
  os << ']';
  return os.str();
}

}  // namespace

void StepSolveConfig::validate() const {
  if (eps.mode == EpsSchedule::Mode::Fixed && !(eps.value > 0.0)) {
    throw ConfigError("solver.eps", "fixed eps must be positive");
  }
  if (!(newton_tol > 0.0)) throw ConfigError("solver.newton_tol", "must be positive");
  if (newton_max_iter < 1) throw ConfigError("solver.newton_max_iter", "must be at least 1");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw ConfigError("solver.backtrack_factor", "must lie in (0, 1)");
  }
  if (!(min_step > 0.0 && min_step <= 1.0)) throw ConfigError("solver.min_step", "must lie in (0, 1]");
  if (!(linear.relative_tolerance > 0.0)) {
    throw ConfigError("solver.cg_tol", "must be positive");
  }
}

double step_size_threshold(const Potential& p) {
  const double lip = p.pi_lipschitz();
  return lip > 0.0 ? 1.0 / lip : kInfinity;
}

void require_admissible_step(const Potential& p, double h) {
  const double limit = step_size_threshold(p);
  if (!(h > 0.0) || !(h < limit)) {
    std::ostringstream os;
    os.precision(17);
    os << "step size h = " << h << " must satisfy 0 < h < 1/||pi'||_inf = " << limit
       << " (existence threshold for the time-discrete problem)";
    throw PreconditionError(os.str());
  }
}

double coercivity_constant(const Potential& p, double h) {
  return std::min(1.0 - h * p.pi_lipschitz(), h);
}

double phase_energy_constant(const Potential& p, double h) {
  const double margin = 1.0 - h * p.pi_lipschitz();
  return 1.0 / std::sqrt(2.0 * margin * std::min(0.5 * margin, h));
}

PhaseSolution solve_phase_step(const Potential& p, double h, const Field& g,
                               const StepSolveConfig& cfg, const Field* initial_guess) {
  require_admissible_step(p, h);
  const double eps = cfg.eps.resolve(h);
  if (!(eps > 0.0)) throw PreconditionError("solve_phase_step: eps must be positive");

  Field phi = initial_guess ? *initial_guess : g;
  require_same_grid(phi.grid(), g.grid(), "solve_phase_step");

  const double g_norm = norm_h(g);
  const double target = cfg.newton_tol * (g_norm > 0.0 ? g_norm : 1.0);

  StepSolveReport report;
  report.eps_used = eps;
  ResidualEval current = evaluate_residual(p, h, eps, g, phi);
  report.residual_history.push_back(current.norm);

  Field direction(g.grid());
  Field neg_residual(g.grid());
  while (current.norm > target) {
    if (report.iterations >= cfg.newton_max_iter) {
      throw ConvergenceError("phase step: Newton did not converge in " +
                                 std::to_string(cfg.newton_max_iter) +
                                 " iterations; residual history " +
                                 format_history(report.residual_history),
                             report.residual_history);
    }
    for (std::size_t k = 0; k < phi.size(); ++k) neg_residual[k] = -current.residual[k];
    std::fill(direction.values().begin(), direction.values().end(), 0.0);
    const CgReport lin =
        solve_shifted_laplacian(current.jacobian_diag, h, neg_residual, direction, cfg.linear);
    report.linear_iterations += lin.iterations;

    double step = 1.0;
    for (;;) {
      Field trial = phi;
      trial.axpy(step, direction);
      ResidualEval next = evaluate_residual(p, h, eps, g, trial);
      if (next.norm <= (1.0 - 1e-4 * step) * current.norm || next.norm <= target) {
        phi = std::move(trial);
        current = std::move(next);
        break;
      }
      step *= cfg.backtrack_factor;
      if (step < cfg.min_step) {
        report.residual_history.push_back(next.norm);
        throw ConvergenceError("phase step: line search failed below minimum step; residual history " +
                                   format_history(report.residual_history),
                               report.residual_history);
      }
    }
    ++report.iterations;
    report.residual_history.push_back(current.norm);
  }
  report.final_residual = current.norm;

  Field xi(g.grid());
  for (std::size_t k = 0; k < phi.size(); ++k) xi[k] = yosida(p, eps, phi[k]);
  return {std::move(phi), std::move(xi), std::move(report)};
}

ContinuationResult solve_eps_continuation(const Potential& p, double h, const Field& g,
                                          const StepSolveConfig& cfg,
                                          std::span<const double> eps_list) {
  if (eps_list.empty()) throw PreconditionError("eps continuation: empty eps list");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw PreconditionError("eps continuation: eps must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw PreconditionError("eps continuation: eps list must be strictly decreasing");
    }
  }
  ContinuationResult out;
  StepSolveConfig local = cfg;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    local.eps = EpsSchedule::fixed(eps_list[i]);
    const Field* guess = out.solutions.empty() ? nullptr : &out.solutions.back().phi;
    PhaseSolution sol = solve_phase_step(p, h, g, local, guess);
    if (!out.solutions.empty()) {
      out.cauchy_differences.push_back(norm_h(sol.phi - out.solutions.back().phi));
    }
    out.eps.push_back(eps_list[i]);
    out.solutions.push_back(std::move(sol));
  }
  return out;
}

}  // namespace caginalp
