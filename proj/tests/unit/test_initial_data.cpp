#include <cmath>

#include "caginalp/error.hpp"
#include "caginalp/initial_data.hpp"
#include "doctest.h"

using namespace caginalp;

TEST_CASE("constant and cosine bump") {
  const Grid g = Grid::line(2.0, 5);
  CHECK(make_initial_field(InitialDataSpec::constant(0.3), g)[4] == 0.3);
  const Field c = make_initial_field(InitialDataSpec::cosine_bump(0.5, 1, 0.1), g);
  CHECK(c[0] == doctest::Approx(0.6));
  CHECK(c[2] == doctest::Approx(0.1));
  CHECK(c[4] == doctest::Approx(-0.4));
}

TEST_CASE("tanh interface in 1D and radially in 2D") {
  const Grid g = Grid::line(1.0, 5);
  const Field u = make_initial_field(InitialDataSpec::tanh_interface(0.5, 0.1, 0.9), g);
  CHECK(u[2] == doctest::Approx(0.0));
  CHECK(u[4] == doctest::Approx(0.9 * std::tanh(5.0)));
  const Grid r = Grid::rectangle(2.0, 2.0, 5, 5);
  const Field v = make_initial_field(InitialDataSpec::tanh_interface(0.5, 0.1), r);
  CHECK(v[12] == doctest::Approx(std::tanh(-5.0)));
  CHECK(v[0] == doctest::Approx(std::tanh((std::sqrt(2.0) - 0.5) / 0.1)));
}

TEST_CASE("random smooth: seeded, bounded, reproducible") {
  const Grid g = Grid::rectangle(1.0, 1.0, 17, 17);
  const Field a = make_initial_field(InitialDataSpec::random_smooth(42, 3, 0.8), g);
  const Field b = make_initial_field(InitialDataSpec::random_smooth(42, 3, 0.8), g);
  const Field c = make_initial_field(InitialDataSpec::random_smooth(43, 3, 0.8), g);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.max_abs() <= 0.8 + 1e-15);
  CHECK(a.max_abs() > 0.0);
}

TEST_CASE("validation") {
  InitialDataSpec s;
  s.family = InitialFamily::RandomSmooth;
  CHECK_THROWS_AS(s.validate(), PreconditionError);
  CHECK_THROWS_AS(InitialDataSpec::tanh_interface(0.5, 0.0).validate(), PreconditionError);
  CHECK_THROWS_AS(InitialDataSpec::cosine_bump(1.0, -1).validate(), PreconditionError);
  CHECK(parse_initial_family("tanh_interface") == InitialFamily::TanhInterface);
  CHECK_THROWS_AS(parse_initial_family("gaussian"), PreconditionError);
}
