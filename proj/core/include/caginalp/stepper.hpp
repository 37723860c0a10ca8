#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "caginalp/grid.hpp"
#include "caginalp/linear_solver.hpp"
#include "caginalp/phase_solver.hpp"
#include "caginalp/potential.hpp"
#include "caginalp/source.hpp"

namespace caginalp {

/// Largest number of stored values (N + 1) * points a run accepts.
inline constexpr std::size_t kMaxStoredValues = std::size_t{1} << 27;

/// h1 = 1 / (4 (||pi'||^2 + 1)): step bound under which the uniform energy
/// estimates hold.
double estimate_threshold(const Potential& p);

struct SchemeParams {
  double T = 1.0;
  int N = 1;
  double ell = 1.0;
  Potential potential = Potential::regular();
  StepSolveConfig solve{};
  /// When set, run() additionally requires h < estimate_threshold().
  bool monitor_estimates = false;

  double h() const { return T / N; }
  /// Throws PreconditionError / ConfigError.
  void validate() const;
};

/// (theta_n, phi_n, xi_n); xi is absent at n = 0.
struct State {
  int level = 0;
  Field theta;
  Field phi;
  std::optional<Field> xi;
};

struct StepDiagnostics {
  int step = 0;  ///< index n of the step n -> n + 1
  StepSolveReport phase;
  CgReport theta;
};

struct Trajectory {
  SchemeParams params;
  std::vector<State> states;        ///< n = 0..N
  std::vector<Field> theta_source;  ///< f_1..f_N
  std::vector<Field> phase_source;  ///< empty unless the phase equation is forced
  std::vector<StepDiagnostics> diagnostics;

  const Grid& grid() const { return states.front().theta.grid(); }
  double h() const { return params.h(); }
  int steps() const { return static_cast<int>(states.size()) - 1; }
};

/// One step of the semi-implicit scheme: first the phase inclusion
///   phi - h Lap phi + h (xi + pi(phi)) = phi_n + h ell theta_n [+ h g_{n+1}],
/// then the heat equation
///   theta - h Lap theta = h f_{n+1} + ell phi_n - ell phi + theta_n.
/// Solver errors are rethrown with the step index prepended.
State step(const State& prev, const SchemeParams& params, const Field& f_next,
           const Field* phase_next = nullptr, StepDiagnostics* diagnostics = nullptr);

using StepObserver = std::function<void(const StepDiagnostics&)>;

/// Runs all N steps from (theta0, phi0) with pre-averaged forcing.
Trajectory run(const SchemeParams& params, const Field& theta0, const Field& phi0,
               Forcing forcing, const StepObserver& observer = {});

/// Averages `source` over the time grid, then runs.
Trajectory run(const SchemeParams& params, const Field& theta0, const Field& phi0,
               const SourceSpec& source, const StepObserver& observer = {});

}  // namespace caginalp
