#include <cmath>

#include "caginalp/error.hpp"
#include "caginalp/estimates.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace caginalp;

namespace {

SchemeParams params(Potential p, double T, int N, double ell = 1.0) {
  SchemeParams s;
  s.T = T;
  s.N = N;
  s.ell = ell;
  s.potential = p;
  return s;
}

Potential pick(gen::Gen& gen) {
  const int k = gen.integer(0, 2);
  return k == 0 ? Potential::regular() : k == 1 ? Potential::logarithmic(gen.uniform(1.1, 2.5))
                                                : Potential::double_obstacle(gen.uniform(0.3, 2.0));
}

}  // namespace

TEST_CASE("property: per-step energy inequality on random runs") {
  gen::Gen gen(31);
  for (int trial = 0; trial < 12; ++trial) {
    const Grid g = gen.grid(30);
    const Potential p = pick(gen);
    const double h1 = estimate_threshold(p);
    const double T = gen.uniform(0.1, 0.5);
    const int N = static_cast<int>(T / (gen.uniform(0.2, 0.95) * h1)) + 1;
    const SourceSpec src = SourceSpec::separable_sinusoid({gen.uniform(-3, 3), gen.uniform(-3, 3)}, 4.0,
                                                          {g.extent(0), g.dim() == 2 ? g.extent(1) : 1.0});
    const Trajectory tr = run(params(p, T, N, gen.uniform(0.3, 2.0)), gen.smooth_field(g, 2.0),
                              gen.smooth_field(g, 0.99), src);
    CAPTURE(trial);
    for (const EnergyStep& e : energy_inequality(tr)) CHECK(e.violation() <= 1e-10);
    const NormReport r = apriori_report(tr);
    CHECK(r.energy_violation <= 1e-10);
  }
}

TEST_CASE("apriori report on zero data is all zero") {
  const Grid g = Grid::line(1.0, 9);
  const Trajectory tr = run(params(Potential::double_obstacle(), 0.5, 20), Field(g), Field(g), SourceSpec::zero());
  const NormReport r = apriori_report(tr);
  for (double v : r.monitored()) CHECK(v == 0.0);
  CHECK(r.energy_violation == 0.0);
  CHECK(r.betahat_infeasible_count == 0);
  CHECK(r.boundary_layer_fraction == 0.0);
  CHECK(NormReport::monitored_names().size() == NormReport::kMonitoredCount);
}

TEST_CASE("apriori report requires h below h1") {
  const Grid g = Grid::line(1.0, 9);
  const Trajectory tr = run(params(Potential::double_obstacle(), 1.0, 4), Field(g), Field(g), SourceSpec::zero());
  CHECK_THROWS_AS(apriori_report(tr), PreconditionError);
}

TEST_CASE("apriori report: hand-checked norms for a constant-in-space run") {
  const Grid g = Grid::line(1.0, 5);
  const Trajectory tr = run(params(Potential::regular(), 0.1, 10), Field(g, 1.0), Field(g, 0.0), SourceSpec::zero());
  const NormReport r = apriori_report(tr);
  const double h = 0.01;
  double linf = 0.0, dt = 0.0;
  for (int n = 1; n <= 10; ++n) {
    linf = std::max(linf, std::abs(tr.states[n].theta[0]));
    const double d = (tr.states[n].theta[0] - tr.states[n - 1].theta[0]) / h;
    dt += h * d * d;
  }
  CHECK(r.linf_h_theta_bar == doctest::Approx(linf));
  CHECK(r.l2_h_dt_theta_hat == doctest::Approx(std::sqrt(dt)));
  CHECK(r.l2_h_lap_theta_bar < 1e-12);
}

TEST_CASE("error report: self comparison and brute-force quadrature") {
  gen::Gen gen(32);
  const Grid g = Grid::line(1.0, 17);
  const Field th = gen.smooth_field(g, 1.0), ph = gen.smooth_field(g, 0.8);
  const SourceSpec src = SourceSpec::separable_sinusoid({1.0, 0.5}, 3.0, {1.0, 1.0});
  const Trajectory coarse = run(params(Potential::regular(), 0.5, 4), th, ph, src);
  const Trajectory fine = run(params(Potential::regular(), 0.5, 16), th, ph, src);
  // against itself only the bar/hat gap remains: (h/3) sum ||u_{n+1} - u_n||_V^2
  const ErrorReport self = error_report(fine, fine);
  CHECK(self.e_phi_linf_h == 0.0);
  CHECK(self.e_theta_linf_h == 0.0);
  CHECK(self.e_combo_linf_h == 0.0);
  double gap_phi = 0.0, gap_theta = 0.0;
  for (int n = 0; n < fine.steps(); ++n) {
    const Field dp = fine.states[n + 1].phi - fine.states[n].phi;
    const Field dt = fine.states[n + 1].theta - fine.states[n].theta;
    gap_phi += fine.h() / 3.0 * inner_v(dp, dp);
    gap_theta += fine.h() / 3.0 * inner_v(dt, dt);
  }
  CHECK(self.e_phi_l2_v == doctest::Approx(std::sqrt(gap_phi)).epsilon(1e-12));
  CHECK(self.e_theta_l2_v == doctest::Approx(std::sqrt(gap_theta)).epsilon(1e-12));

  const ErrorReport e = error_report(coarse, fine);
  // oracle: midpoint rule on a very fine time partition of ||bar phi_c - hat phi_f||_V^2
  const int M = 4000;
  double sum = 0.0;
  const double T = 0.5;
  for (int i = 0; i < M; ++i) {
    const double t = (i + 0.5) * T / M;
    const int nc = static_cast<int>(t / coarse.h());
    const double sf = t / fine.h();
    const int nf = static_cast<int>(sf);
    Field hat = fine.states[nf].phi;
    hat *= 1.0 - (sf - nf);
    hat.axpy(sf - nf, fine.states[nf + 1].phi);
    const Field d = coarse.states[nc + 1].phi - hat;
    sum += inner_v(d, d) * T / M;
  }
  CHECK(e.e_phi_l2_v == doctest::Approx(std::sqrt(sum)).epsilon(1e-5));
  CHECK(e.e_combo_linf_h <= e.e_theta_linf_h + e.e_phi_linf_h + 1e-15);
  CHECK(ErrorReport::names().size() == e.values().size());
}

TEST_CASE("error report preconditions") {
  const Grid g = Grid::line(1.0, 9);
  const Grid g2 = Grid::line(1.0, 11);
  const Trajectory a = run(params(Potential::regular(), 0.5, 4), Field(g), Field(g), SourceSpec::zero());
  const Trajectory b = run(params(Potential::regular(), 0.5, 6), Field(g), Field(g), SourceSpec::zero());
  const Trajectory c = run(params(Potential::regular(), 0.5, 8), Field(g2), Field(g2), SourceSpec::zero());
  const Trajectory d = run(params(Potential::regular(), 0.6, 8), Field(g), Field(g), SourceSpec::zero());
  CHECK_THROWS_AS(error_report(a, b), PreconditionError);
  CHECK_THROWS_AS(error_report(a, c), GridMismatchError);
  CHECK_THROWS_AS(error_report(a, d), PreconditionError);
}

TEST_CASE("source average error: slope and bound") {
  const Grid g = Grid::line(1.0, 9);
  const SourceSpec s = SourceSpec::separable_sinusoid({1.0}, 1.0, {1.0, 1.0});
  std::vector<double> hs, es;
  for (int N : {16, 32, 64, 128}) {
    const double h = 1.0 / N;
    hs.push_back(h);
    es.push_back(source_average_error(s, g, 1.0, h));
    CHECK(es.back() <= source_average_bound(s, g, 1.0, h));
  }
  CHECK(loglog_slope(hs, es) >= 0.5);
  CHECK_THROWS_AS(source_average_error(s, g, 1.0, 0.3), PreconditionError);
}

TEST_CASE("log-log slope") {
  const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> e;
  for (double x : h) e.push_back(3.0 * std::pow(x, 0.7));
  CHECK(loglog_slope(h, e) == doctest::Approx(0.7));
  const std::vector<double> bad{1.0, 0.0, 1.0, 1.0};
  CHECK_THROWS_AS(loglog_slope(h, bad), PreconditionError);
  CHECK_THROWS_AS(loglog_slope(std::span<const double>(h).first(1), std::span<const double>(e).first(1)),
                  PreconditionError);
}

TEST_CASE("property: discrete Gronwall bound dominates admissible sequences") {
  gen::Gen gen(33);
  for (int trial = 0; trial < 200; ++trial) {
    const double c = gen.uniform(0.1, 5.0);
    const double h = gen.uniform(1e-3, 0.2);
    const int m = gen.integer(1, 200);
    std::vector<double> a;
    double sum = 0.0;
    for (int j = 0; j <= m; ++j) {
      const double cap = c + c * h * sum;
      a.push_back(gen.uniform(0.0, 1.0) * cap);
      sum += a.back();
    }
    CAPTURE(trial);
    for (int j = 0; j <= m; ++j) {
      CHECK(a[j] <= discrete_gronwall_bound(c, h, j) * (1.0 + 1e-12));
    }
    CHECK(discrete_gronwall_bound(c, h, m) <= c * std::exp(c * m * h) * (1.0 + 1e-12));
  }
  // the extremal sequence attains the bound
  const double c = 2.0, h = 0.1;
  double sum = 0.0;
  for (int j = 0; j <= 10; ++j) {
    const double a = c + c * h * sum;
    CHECK(a == doctest::Approx(discrete_gronwall_bound(c, h, j)));
    sum += a;
  }
}
