#include <benchmark/benchmark.h>

#include "caginalp/grid.hpp"
#include "caginalp/initial_data.hpp"
#include "caginalp/linear_solver.hpp"
#include "caginalp/phase_solver.hpp"
#include "caginalp/source.hpp"
#include "caginalp/stepper.hpp"

using namespace caginalp;

namespace {

Grid square(int n) { return Grid::rectangle(1.0, 1.0, n, n); }

Potential potential_of(int kind) {
  switch (kind) {
    case 0:
      return Potential::regular();
    case 1:
      return Potential::logarithmic();
    default:
      return Potential::double_obstacle();
  }
}

void BM_Laplacian(benchmark::State& state) {
  const Grid g = square(static_cast<int>(state.range(0)));
  const Field u = make_initial_field(InitialDataSpec::random_smooth(7, 4, 0.5), g);
  Field out(g);
  for (auto _ : state) {
    apply_neumann_laplacian(g, u.values(), out.values());
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_Laplacian)->Arg(33)->Arg(65)->Arg(129)->Arg(257);

void BM_Helmholtz(benchmark::State& state) {
  const Grid g = square(static_cast<int>(state.range(0)));
  const Field rhs = make_initial_field(InitialDataSpec::random_smooth(11, 6, 1.0), g);
  CgReport report;
  for (auto _ : state) {
    Field u = helmholtz_solve(0.01, rhs, {}, &report);
    benchmark::DoNotOptimize(u.values().data());
  }
  state.counters["cg_iters"] = static_cast<double>(report.iterations);
}
BENCHMARK(BM_Helmholtz)->Arg(33)->Arg(65)->Arg(129);

void BM_PhaseStep(benchmark::State& state) {
  const Grid g = square(65);
  const Potential p = potential_of(static_cast<int>(state.range(0)));
  const double h = 0.01;
  const Field rhs = make_initial_field(InitialDataSpec::tanh_interface(0.3, 0.05, 0.9), g);
  const StepSolveConfig cfg;
  PhaseSolution sol = solve_phase_step(p, h, rhs, cfg);
  for (auto _ : state) {
    sol = solve_phase_step(p, h, rhs, cfg);
    benchmark::DoNotOptimize(sol.phi.values().data());
  }
  state.counters["newton_iters"] = static_cast<double>(sol.report.iterations);
}
BENCHMARK(BM_PhaseStep)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_FullRun(benchmark::State& state) {
  const Grid g = Grid::line(1.0, 257);
  SchemeParams prm;
  prm.T = 0.5;
  prm.N = static_cast<int>(state.range(0));
  prm.ell = 1.0;
  prm.potential = Potential::double_obstacle();
  const Field theta0 = make_initial_field(InitialDataSpec::cosine_bump(0.5, 1), g);
  const Field phi0 = make_initial_field(InitialDataSpec::tanh_interface(0.5, 0.05), g);
  const SourceSpec src = SourceSpec::separable_sinusoid({0.0, 1.0}, 3.0, {1.0, 1.0});
  for (auto _ : state) {
    Trajectory tr = run(prm, theta0, phi0, src);
    benchmark::DoNotOptimize(tr.states.back().phi.values().data());
  }
}
BENCHMARK(BM_FullRun)->Arg(32)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
