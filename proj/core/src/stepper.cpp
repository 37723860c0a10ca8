#include "caginalp/stepper.hpp"

#include <cmath>
#include <string>

#include "caginalp/error.hpp"

namespace caginalp {

double estimate_threshold(const Potential& p) {
  const double lip = p.pi_lipschitz();
  return 1.0 / (4.0 * (lip * lip + 1.0));
}

void SchemeParams::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("scheme.T", "must be positive and finite");
  if (N < 1) throw ConfigError("scheme.N", "must be at least 1");
  if (!(ell > 0.0) || !std::isfinite(ell)) throw ConfigError("scheme.ell", "must be positive");
  solve.validate();
  try {
    require_admissible_step(potential, h());
  } catch (const PreconditionError& e) {
    throw ConfigError("scheme.N", e.what());
  }
  if (monitor_estimates && !(h() < estimate_threshold(potential))) {
    throw ConfigError("scheme.N", "estimate monitoring needs h = " + std::to_string(h()) +
                                      " < h1 = 1/(4(||pi'||^2+1)) = " +
                                      std::to_string(estimate_threshold(potential)));
  }
}

State step(const State& prev, const SchemeParams& params, const Field& f_next,
           const Field* phase_next, StepDiagnostics* diagnostics) {
  const double h = params.h();
  const double ell = params.ell;
  require_same_grid(prev.theta.grid(), f_next.grid(), "step");

  try {
    Field g = prev.phi;
    g.axpy(h * ell, prev.theta);
    if (phase_next) g.axpy(h, *phase_next);
    PhaseSolution phase = solve_phase_step(params.potential, h, g, params.solve, &prev.phi);

    Field rhs = prev.theta;
    rhs.axpy(h, f_next);
    rhs.axpy(ell, prev.phi);
    rhs.axpy(-ell, phase.phi);
    CgReport theta_report;
    Field theta = helmholtz_solve(h, rhs, params.solve.linear, &theta_report);

    if (diagnostics) {
      diagnostics->step = prev.level;
      diagnostics->phase = phase.report;
      diagnostics->theta = theta_report;
    }
    return State{prev.level + 1, std::move(theta), std::move(phase.phi), std::move(phase.xi)};
  } catch (const ConvergenceError& e) {
    throw ConvergenceError("step " + std::to_string(prev.level) + ": " + e.what(), e.residuals());
  } catch (const PreconditionError& e) {
    throw PreconditionError("step " + std::to_string(prev.level) + ": " + e.what());
  }
}

Trajectory run(const SchemeParams& params, const Field& theta0, const Field& phi0, Forcing forcing,
               const StepObserver& observer) {
  try {
    params.validate();
  } catch (const ConfigError& e) {
    throw PreconditionError(e.what());
  }
  require_same_grid(theta0.grid(), phi0.grid(), "run");
  const Grid& grid = theta0.grid();
  if (!theta0.all_finite() || !phi0.all_finite()) {
    throw PreconditionError("run: initial data must be finite");
  }
  for (std::size_t k = 0; k < phi0.size(); ++k) {
    if (!params.potential.in_domain(phi0[k])) {
      throw PreconditionError("run: phi0 leaves the closure of D(beta) at point " +
                              std::to_string(k) + " (beta_hat(phi0) not integrable)");
    }
  }
  const std::size_t stored = (static_cast<std::size_t>(params.N) + 1) * grid.size();
  if (stored > kMaxStoredValues) {
    throw PreconditionError("run: (N+1)*points = " + std::to_string(stored) +
                            " exceeds the memory guard 2^27");
  }
  if (forcing.theta.size() != static_cast<std::size_t>(params.N)) {
    throw PreconditionError("run: need one averaged source field per step");
  }
  if (!forcing.phase.empty() && forcing.phase.size() != static_cast<std::size_t>(params.N)) {
    throw PreconditionError("run: phase forcing must be empty or one field per step");
  }

  Trajectory traj;
  traj.params = params;
  traj.states.reserve(params.N + 1);
  traj.diagnostics.reserve(params.N);
  traj.states.push_back(State{0, theta0, phi0, std::nullopt});
  for (int n = 0; n < params.N; ++n) {
    StepDiagnostics diag;
    const Field* phase = forcing.phase.empty() ? nullptr : &forcing.phase[n];
    traj.states.push_back(step(traj.states.back(), params, forcing.theta[n], phase, &diag));
    if (observer) observer(diag);
    traj.diagnostics.push_back(std::move(diag));
  }
  traj.theta_source = std::move(forcing.theta);
  traj.phase_source = std::move(forcing.phase);
  return traj;
}

Trajectory run(const SchemeParams& params, const Field& theta0, const Field& phi0,
               const SourceSpec& source, const StepObserver& observer) {
  if (params.N < 1) throw PreconditionError("run: N must be at least 1");
  if ((static_cast<std::size_t>(params.N) + 1) * theta0.size() > kMaxStoredValues) {
    throw PreconditionError("run: (N+1)*points exceeds the memory guard 2^27");
  }
  return run(params, theta0, phi0, average_forcing(source, theta0.grid(), params.T, params.N),
             observer);
}

}  // namespace caginalp
