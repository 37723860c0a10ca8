#include <cmath>

#include "caginalp/error.hpp"
#include "caginalp/interpolants.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace caginalp;

namespace {

Trajectory random_run(gen::Gen& gen) {
  const Grid g = gen.grid(30);
  SchemeParams p;
  p.T = gen.uniform(0.1, 1.0);
  p.N = gen.integer(2, 30);
  const int kind = gen.integer(0, 2);
  p.potential = kind == 0 ? Potential::regular() : kind == 1 ? Potential::logarithmic(2.0) : Potential::double_obstacle(1.0);
  if (p.h() >= 1.0 / p.potential.pi_lipschitz()) p.N = static_cast<int>(p.T * p.potential.pi_lipschitz()) + 2;
  p.ell = gen.uniform(0.3, 2.0);
  const SourceSpec src = SourceSpec::separable_sinusoid({gen.uniform(-1, 1), gen.uniform(-1, 1)}, 2.0,
                                                        {g.extent(0), g.dim() == 2 ? g.extent(1) : 1.0});
  return run(p, gen.smooth_field(g, 1.0), gen.smooth_field(g, 0.95), src);
}

Trajectory tiny() {
  const Grid g = Grid::line(1.0, 3);
  Trajectory t;
  t.params.T = 1.0;
  t.params.N = 2;
  for (int n = 0; n <= 2; ++n) {
    State s{n, Field(g, 10.0 * n), Field(g, -1.0 * n), std::nullopt};
    if (n > 0) s.xi = Field(g, 100.0 * n);
    t.states.push_back(s);
  }
  return t;
}

}  // namespace

TEST_CASE("hat, bar and underline conventions") {
  const Trajectory t = tiny();
  const InterpolantView hat(t, InterpolantKind::Hat, Component::Theta);
  const InterpolantView bar(t, InterpolantKind::Bar, Component::Theta);
  const InterpolantView under(t, InterpolantKind::Underline, Component::Theta);
  CHECK(hat.eval(0.25)[0] == doctest::Approx(5.0));
  CHECK(hat.eval(0.5)[1] == 10.0);
  CHECK(hat.eval(1.0)[1] == 20.0);
  CHECK(bar.eval(0.0)[0] == 10.0);
  CHECK(bar.eval(0.25)[0] == 10.0);
  CHECK(bar.eval(0.5)[0] == 10.0);
  CHECK(bar.eval(0.75)[0] == 20.0);
  CHECK(under.eval(0.5)[0] == 10.0);
  CHECK(under.eval(0.25)[0] == 0.0);
  CHECK(under.eval(1.0)[0] == 10.0);
  const InterpolantView xi(t, InterpolantKind::Bar, Component::Xi);
  CHECK(xi.eval(0.1)[2] == 100.0);
  CHECK(InterpolantView(t, InterpolantKind::Hat, Component::Phi).eval(0.75)[0] == doctest::Approx(-1.5));
}

TEST_CASE("interpolant preconditions") {
  const Trajectory t = tiny();
  CHECK_THROWS_AS(InterpolantView(t, InterpolantKind::Hat, Component::Xi), PreconditionError);
  CHECK_THROWS_AS(InterpolantView(t, InterpolantKind::Underline, Component::Xi), PreconditionError);
  const InterpolantView hat(t, InterpolantKind::Hat, Component::Theta);
  CHECK_THROWS_AS(hat.eval(-0.1), PreconditionError);
  CHECK_THROWS_AS(hat.eval(1.1), PreconditionError);
}

TEST_CASE("identities on a hand-computable trajectory") {
  const Trajectory t = tiny();
  const IdentityReport rep = check_identities(t);
  REQUIRE(rep.checks.size() == 6);
  CHECK(rep.all_hold(1e-12));
  // theta levels 0, 10, 20 on a unit-measure grid, h = 1/2:
  // ||bar - hat||^2 = sum_n int_0^h (d (1 - s/h))^2 = 2 * 100 * h / 3
  CHECK(rep.checks[2].name == "bar_minus_hat_theta_l2h");
  CHECK(rep.checks[2].lhs == doctest::Approx(100.0 / 3.0));
  // ||hat theta||^2 = h/3 (0 + 0 + 100) + h/3 (100 + 200 + 400)
  CHECK(rep.checks[0].lhs == doctest::Approx(800.0 / 6.0));
}

TEST_CASE("property: identities hold to 1e-10 on random runs") {
  gen::Gen gen(23);
  for (int trial = 0; trial < 15; ++trial) {
    const Trajectory tr = random_run(gen);
    const IdentityReport rep = check_identities(tr);
    CAPTURE(trial);
    for (const IdentityCheck& c : rep.checks) {
      CAPTURE(c.name);
      CHECK(c.holds(1e-10));
    }
  }
}

TEST_CASE("identity defect semantics") {
  CHECK(IdentityCheck{"e", 1.0, 1.0 + 1e-12, true}.holds(1e-10));
  CHECK_FALSE(IdentityCheck{"e", 1.0, 1.1, true}.holds(1e-10));
  CHECK(IdentityCheck{"i", 1.0, 2.0, false}.holds(0.0));
  CHECK_FALSE(IdentityCheck{"i", 2.0, 1.0, false}.holds(0.1));
  CHECK(IdentityCheck{"z", 0.0, 0.0, true}.relative_defect() == 0.0);
}
