#include <cmath>
#include <numbers>

#include "caginalp/error.hpp"
#include "caginalp/linear_solver.hpp"
#include "doctest.h"
#include "oracles/scalar_oracles.hpp"
#include "support/generators.hpp"

using namespace caginalp;

TEST_CASE("Helmholtz solve inverts a cosine mode exactly") {
  const int n = 65;
  const double L = 1.5;
  const Grid g = Grid::line(L, n);
  const double a = 0.01;
  for (int k : {0, 1, 3, 7}) {
    const Field rhs = Field::sample(g, [&](const auto& x) { return std::cos(k * std::numbers::pi * x[0] / L); });
    const Field u = helmholtz_solve(a, rhs);
    const double factor = 1.0 / (1.0 - a * oracle::neumann_eigenvalue(k, n, L));
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(u[i] == doctest::Approx(factor * rhs[i]).scale(1.0).epsilon(1e-9));
  }
}

TEST_CASE("zero right-hand side gives zero") {
  const Grid g = Grid::rectangle(1.0, 1.0, 9, 9);
  CgReport rep;
  const Field u = helmholtz_solve(0.3, Field(g), {}, &rep);
  CHECK(u.max_abs() == 0.0);
  CHECK(rep.iterations == 0);
}

TEST_CASE("property: residual is small and the integral is conserved") {
  gen::Gen gen(99);
  for (int trial = 0; trial < 50; ++trial) {
    const Grid g = gen.grid(60);
    const Field rhs = gen.rough_field(g, -1.0, 2.0);
    const double a = std::exp(gen.uniform(std::log(1e-4), std::log(1.0)));
    CgReport rep;
    const Field u = helmholtz_solve(a, rhs, {}, &rep);
    Field res = u;
    res.axpy(-a, neumann_laplacian(u));
    res -= rhs;
    CAPTURE(trial);
    CHECK(norm_h(res) <= 1e-9 * norm_h(rhs));
    CHECK(std::abs(integral(u) - integral(rhs)) <= 1e-13 * (1.0 + std::abs(integral(rhs))) * g.volume());
  }
}

TEST_CASE("variable diagonal") {
  const Grid g = Grid::line(1.0, 21);
  std::vector<double> diag(g.size());
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = 1.0 + static_cast<double>(i);
  const Field rhs(g, 1.0);
  Field u(g);
  solve_shifted_laplacian(diag, 0.1, rhs, u);
  Field res = neumann_laplacian(u);
  res *= -0.1;
  for (std::size_t i = 0; i < diag.size(); ++i) res[i] += diag[i] * u[i] - rhs[i];
  CHECK(norm_h(res) < 1e-9);
}

TEST_CASE("preconditions and non-convergence") {
  const Grid g = Grid::line(1.0, 41);
  Field u(g);
  const std::vector<double> short_diag(3, 1.0);
  CHECK_THROWS_AS(solve_shifted_laplacian(short_diag, 1.0, Field(g, 1.0), u), PreconditionError);
  CHECK_THROWS_AS(helmholtz_solve(0.0, Field(g, 1.0)), PreconditionError);
  gen::Gen gen(5);
  CgOptions tight;
  tight.max_iterations = 2;
  tight.relative_tolerance = 1e-14;
  CHECK_THROWS_AS(helmholtz_solve(1.0, gen.rough_field(g, -1.0, 1.0), tight), ConvergenceError);
}
