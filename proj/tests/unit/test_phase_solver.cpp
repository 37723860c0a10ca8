#include <cmath>
#include <string>

#include "caginalp/error.hpp"
#include "caginalp/phase_solver.hpp"
#include "doctest.h"
#include "oracles/scalar_oracles.hpp"
#include "support/generators.hpp"

using namespace caginalp;

namespace {

double scalar_phase(const oracle::Pot& p, double h, double eps, double g) {
  auto F = [&](double u) { return u + h * oracle::yosida(p, eps, u) + h * p.pi(u) - g; };
  return oracle::bisect(F, -std::abs(g) - 10.0, std::abs(g) + 10.0);
}

}  // namespace

TEST_CASE("step-size threshold and constants") {
  CHECK(step_size_threshold(Potential::logarithmic(2.0)) == 0.25);
  CHECK(step_size_threshold(Potential::regular()) == 1.0);
  CHECK_NOTHROW(require_admissible_step(Potential::logarithmic(2.0), 0.2475));
  CHECK_THROWS_AS(require_admissible_step(Potential::logarithmic(2.0), 0.25), PreconditionError);
  try {
    require_admissible_step(Potential::double_obstacle(1.0), 0.6);
    FAIL("expected rejection");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("1/||pi'||_inf") != std::string::npos);
  }
  CHECK(coercivity_constant(Potential::regular(), 0.25) == doctest::Approx(0.25));
  CHECK(coercivity_constant(Potential::regular(), 0.75) == doctest::Approx(0.25));
}

TEST_CASE("config validation names the field") {
  StepSolveConfig c;
  CHECK_NOTHROW(c.validate());
  c.backtrack_factor = 1.0;
  try {
    c.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "solver.backtrack_factor");
  }
  c = {};
  c.eps = EpsSchedule::fixed(0.0);
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK(EpsSchedule::fixed(0.3).resolve(0.1) == 0.3);
  CHECK(EpsSchedule::tie_to_h().resolve(0.1) == 0.1);
}

TEST_CASE("property: constant data reduce to the scalar oracle") {
  gen::Gen gen(7);
  const Grid grid = Grid::line(1.0, 9);
  for (int trial = 0; trial < 60; ++trial) {
    const int kind = gen.integer(0, 2);
    const Potential p = kind == 0   ? Potential::regular()
                        : kind == 1 ? Potential::logarithmic(2.0)
                                    : Potential::double_obstacle(1.0);
    const oracle::Pot op{kind == 0 ? oracle::Kind::Regular
                                   : (kind == 1 ? oracle::Kind::Logarithmic : oracle::Kind::Obstacle),
                         kind == 0 ? 0.0 : p.coefficient()};
    const double h = gen.uniform(0.01, 0.95) * step_size_threshold(p);
    const double g = gen.uniform(-2.0, 2.0);
    const PhaseSolution sol = solve_phase_step(p, h, Field(grid, g), {});
    const double want = scalar_phase(op, h, h, g);
    CAPTURE(trial);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      CHECK(sol.phi[k] == doctest::Approx(want).scale(1.0).epsilon(1e-10));
      CHECK(sol.xi[k] == doctest::Approx(oracle::yosida(op, h, want)).scale(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("property: residual of the regularized equation vanishes") {
  gen::Gen gen(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Grid grid = gen.grid(50);
    const Potential p = gen.coin() ? Potential::double_obstacle(gen.uniform(0.2, 2.0)) : Potential::logarithmic(2.0);
    const double h = gen.uniform(0.05, 0.9) * step_size_threshold(p);
    const Field g = gen.smooth_field(grid, gen.uniform(0.5, 2.0));
    const PhaseSolution sol = solve_phase_step(p, h, g, {});
    Field res = sol.phi;
    res.axpy(-h, neumann_laplacian(sol.phi));
    for (std::size_t k = 0; k < grid.size(); ++k) res[k] += h * (sol.xi[k] + pi_eval(p, sol.phi[k])) - g[k];
    CAPTURE(trial);
    CHECK(norm_h(res) <= 1e-9 * std::max(1.0, norm_h(g)));
    CHECK(sol.report.final_residual <= 1e-10 * std::max(1.0, norm_h(g)));
    CHECK(sol.report.eps_used == h);
  }
}

TEST_CASE("phase energy bound") {
  gen::Gen gen(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Grid grid = gen.grid(40);
    const Potential p = Potential::double_obstacle(1.0);
    const double h = gen.uniform(0.05, 0.9) * 0.5;
    const Field g = gen.smooth_field(grid, 2.0);
    const PhaseSolution sol = solve_phase_step(p, h, g, {});
    CHECK(norm_v(sol.phi) <= phase_energy_constant(p, h) * norm_h(g) * (1.0 + 1e-9));
  }
}

TEST_CASE("eps continuation: Cauchy differences shrink") {
  const Grid grid = Grid::line(1.0, 33);
  const Field g = Field::sample(grid, [](const auto& x) { return 3.0 * std::cos(3.0 * x[0]); });
  const std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  const ContinuationResult res = solve_eps_continuation(Potential::double_obstacle(1.0), 0.1, g, {}, eps);
  REQUIRE(res.cauchy_differences.size() == 4);
  for (std::size_t i = 1; i < res.cauchy_differences.size(); ++i) {
    CHECK(res.cauchy_differences[i] < res.cauchy_differences[i - 1]);
  }
  CHECK(res.solutions.back().phi.max_abs() <= 1.0 + 1e-3);
  const std::vector<double> bad{1e-2, 1e-1};
  CHECK_THROWS_AS(solve_eps_continuation(Potential::regular(), 0.1, g, {}, bad), PreconditionError);
}

TEST_CASE("Newton failure carries the residual history") {
  const Grid grid = Grid::line(1.0, 17);
  StepSolveConfig cfg;
  cfg.newton_max_iter = 1;
  cfg.newton_tol = 1e-15;
  const Field g = Field::sample(grid, [](const auto& x) { return 5.0 * std::cos(7.0 * x[0]); });
  try {
    solve_phase_step(Potential::regular(), 0.5, g, cfg);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.residuals().size() >= 2);
    CHECK(e.final_residual() > 0.0);
  }
  CHECK_THROWS_AS(solve_phase_step(Potential::regular(), 1.0, g, {}), PreconditionError);
}
