#include <string>

#include "caginalp/config.hpp"
#include "caginalp/error.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace caginalp;

namespace {

const char* kBase = R"({
  "schema_version": 1,
  "run_id": "base",
  "mode": "single",
  "grid": {"dim": 1, "extents": [1.0], "points": [33]},
  "scheme": {"T": 0.5, "N": 32, "ell": 1.0},
  "potential": {"kind": "double_obstacle", "c2": 1.0},
  "initial": {
    "theta0": {"family": "constant", "value": 0.0},
    "phi0": {"family": "tanh_interface", "center": 0.5, "width": 0.1}
  },
  "source": {"family": "zero"}
})";

std::string field_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("parse a minimal config with defaults") {
  const RunConfig c = parse_config(kBase);
  CHECK(c.mode == RunMode::Single);
  CHECK(c.grid.make() == Grid::line(1.0, 33));
  CHECK(c.potential == Potential::double_obstacle(1.0));
  CHECK(c.solver == StepSolveConfig{});
  CHECK(c.output_dir == "out");
  CHECK(c.scheme(c.N).h() == doctest::Approx(0.5 / 32));
}

TEST_CASE("round trip on the base config") {
  const RunConfig c = parse_config(kBase);
  CHECK(parse_config(emit_config(c)) == c);
}

TEST_CASE("property: round trip on random configs") {
  gen::Gen gen(41);
  for (int trial = 0; trial < 100; ++trial) {
    RunConfig c;
    c.run_id = "r" + std::to_string(trial);
    if (gen.coin()) {
      c.grid.extents = {gen.uniform(0.5, 4.0), gen.uniform(0.5, 4.0)};
      c.grid.points = {gen.integer(3, 20), gen.integer(3, 20)};
      c.grid.truncation = gen.coin() ? Truncation::BoundedBox : Truncation::TruncatedWholeSpace;
    } else {
      c.grid.extents = {gen.uniform(0.5, 4.0)};
      c.grid.points = {gen.integer(3, 50)};
    }
    const int kind = gen.integer(0, 2);
    c.potential = kind == 0 ? Potential::regular() : kind == 1 ? Potential::logarithmic(gen.uniform(1.1, 3.0))
                                                               : Potential::double_obstacle(gen.uniform(0.1, 2.0));
    c.T = gen.uniform(0.1, 2.0);
    c.N = static_cast<int>(c.T * c.potential.pi_lipschitz() * gen.uniform(1.1, 3.0)) + 1;
    c.ell = gen.uniform(0.1, 3.0);
    c.theta0 = gen.coin() ? InitialDataSpec::random_smooth(gen.integer(0, 1 << 30), gen.integer(0, 5), gen.uniform(0, 2))
                          : InitialDataSpec::cosine_bump(gen.uniform(-1, 1), gen.integer(0, 4), gen.uniform(-1, 1));
    c.phi0 = gen.coin() ? InitialDataSpec::tanh_interface(gen.uniform(0, 1), gen.uniform(0.01, 0.5), gen.uniform(-1, 1))
                        : InitialDataSpec::constant(gen.uniform(-1, 1));
    if (gen.coin()) {
      c.source.family = SourceFamily::SeparableSinusoid;
      c.source.amplitudes = {gen.uniform(-2, 2), gen.uniform(-2, 2)};
      c.source.frequency = gen.uniform(0.1, 5.0);
    }
    c.solver.newton_tol = gen.uniform(1e-12, 1e-8);
    c.solver.linear.max_iterations = static_cast<std::size_t>(gen.integer(0, 1000));
    if (gen.coin()) c.solver.eps = EpsSchedule::fixed(gen.uniform(1e-4, 1e-1));
    c.output_dir = "dir/" + c.run_id;
    CAPTURE(trial);
    REQUIRE_NOTHROW(c.validate());
    CHECK(parse_config(emit_config(c)) == c);
  }
}

TEST_CASE("field-level validation errors") {
  const std::string base = kBase;
  CHECK(field_of(replace(base, R"("N": 32)", R"("N": 1)")) == "scheme.N");
  CHECK(field_of(replace(base, R"("c2": 1.0)", R"("c2": -1.0)")) == "potential.c2");
  CHECK(field_of(replace(base, R"("points": [33])", R"("points": [33, 4])")) == "grid.points");
  CHECK(field_of(replace(base, R"("kind": "double_obstacle", "c2": 1.0)", R"("kind": "regular")")) == "<accepted>");
  CHECK(field_of(replace(base, R"("run_id": "base",)", R"("run_id": "base", "colour": 1,)")) == "colour");
  CHECK(field_of(replace(base, R"("schema_version": 1)", R"("schema_version": 2)")) == "schema_version");
  CHECK(field_of(replace(base, R"("family": "constant", "value": 0.0)", R"("family": "random_smooth", "amplitude": 1.0)")) ==
        "initial.theta0.seed");
  CHECK(field_of(replace(base, R"("center": 0.5)", R"("center": -2.0, "amplitude": 1.5)")) == "initial.phi0");
  CHECK(field_of(replace(base, R"("T": 0.5)", R"("T": "long")")) == "scheme.T");
  CHECK(field_of("{not json") == "<document>");
  CHECK(field_of(replace(base, R"("source": {"family": "zero"})", R"("source": {"family": "white_noise"})")) ==
        "source.family");
}

TEST_CASE("threshold violation names the existence threshold") {
  const std::string text = replace(kBase, R"("N": 32)", R"("N": 1)");
  try {
    parse_config(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("1/||pi'||_inf") != std::string::npos);
  }
}

TEST_CASE("study validation") {
  std::string s = replace(kBase, R"("mode": "single")", R"("mode": "convergence_study")");
  CHECK(field_of(s) == "scheme.N_list");
  CHECK(field_of(replace(s, R"("N": 32,)", R"("N": 32, "N_list": [16, 32, 32, 64], "N_ref": 1024,)")) ==
        "scheme.N_list[2]");
  CHECK(field_of(replace(s, R"("N": 32,)", R"("N": 32, "N_list": [16, 64, 32, 128], "N_ref": 2048,)")) ==
        "scheme.N_list[2]");
  CHECK(field_of(replace(s, R"("N": 32,)", R"("N": 32, "N_list": [16, 32, 64, 128], "N_ref": 1024,)")) ==
        "scheme.N_ref");
  CHECK(field_of(replace(s, R"("N": 32,)", R"("N": 32, "N_list": [16, 32, 64, 96], "N_ref": 2048,)")) ==
        "scheme.N_ref");
  CHECK(field_of(replace(s, R"("N": 32,)", R"("N": 32, "N_list": [16, 32, 64, 128], "N_ref": 2048,)")) ==
        "<accepted>");
  std::string sweep = replace(kBase, R"("mode": "single")", R"("mode": "apriori_sweep")");
  CHECK(field_of(replace(sweep, R"("N": 32,)", R"("N": 32, "N_list": [8, 16, 32, 64],)")) == "scheme.N_list[0]");
}

TEST_CASE("manufactured problem restrictions") {
  std::string s = replace(kBase, R"("source": {"family": "zero"})",
                          R"("source": {"family": "manufactured_residual", "problem": "cosine_decay"})");
  CHECK(field_of(s) == "potential.kind");
  s = replace(s, R"("kind": "double_obstacle", "c2": 1.0)", R"("kind": "regular")");
  CHECK(field_of(s) == "initial");
  s = replace(s, R"("family": "constant", "value": 0.0)", R"("family": "cosine_bump", "amplitude": 1.0)");
  s = replace(s, R"("family": "tanh_interface", "center": 0.5, "width": 0.1)",
              R"("family": "cosine_bump", "amplitude": 1.0, "mode": 1)");
  CHECK(field_of(s) == "<accepted>");
}
