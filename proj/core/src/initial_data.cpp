#include "caginalp/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "caginalp/error.hpp"

namespace caginalp {

namespace {

// Portable uniform draw in [-1, 1): the standard distributions are
// implementation defined, the engine is not.
double uniform_pm1(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

double cosine_mode(const Grid& g, const std::array<double, Grid::kMaxDim>& x, int axis, int m) {
  return std::cos(m * std::numbers::pi * x[axis] / g.extent(axis));
}

}  // namespace

std::string_view to_string(InitialFamily family) {
  switch (family) {
    case InitialFamily::Constant:
      return "constant";
    case InitialFamily::CosineBump:
      return "cosine_bump";
    case InitialFamily::TanhInterface:
      return "tanh_interface";
    case InitialFamily::RandomSmooth:
      return "random_smooth";
  }
  return "constant";
}

InitialFamily parse_initial_family(std::string_view name) {
  for (InitialFamily f : {InitialFamily::Constant, InitialFamily::CosineBump,
                          InitialFamily::TanhInterface, InitialFamily::RandomSmooth}) {
    if (name == to_string(f)) return f;
  }
  throw PreconditionError("unknown initial-data family '" + std::string(name) + "'");
}

InitialDataSpec InitialDataSpec::constant(double value) {
  InitialDataSpec s;
  s.family = InitialFamily::Constant;
  s.value = value;
  return s;
}

InitialDataSpec InitialDataSpec::cosine_bump(double amplitude, int mode, double offset) {
  InitialDataSpec s;
  s.family = InitialFamily::CosineBump;
  s.amplitude = amplitude;
  s.mode = mode;
  s.offset = offset;
  return s;
}

InitialDataSpec InitialDataSpec::tanh_interface(double center, double width, double amplitude) {
  InitialDataSpec s;
  s.family = InitialFamily::TanhInterface;
  s.center = center;
  s.width = width;
  s.amplitude = amplitude;
  return s;
}

InitialDataSpec InitialDataSpec::random_smooth(std::uint64_t seed, int cutoff, double amplitude) {
  InitialDataSpec s;
  s.family = InitialFamily::RandomSmooth;
  s.seed = seed;
  s.cutoff = cutoff;
  s.amplitude = amplitude;
  return s;
}

void InitialDataSpec::validate() const {
  auto finite = [](double v, const char* field) {
    if (!std::isfinite(v)) throw PreconditionError(std::string(field) + ": must be finite");
  };
  switch (family) {
    case InitialFamily::Constant:
      finite(value, "value");
      break;
    case InitialFamily::CosineBump:
      finite(amplitude, "amplitude");
      finite(offset, "offset");
      if (mode < 0) throw PreconditionError("mode: must be non-negative");
      break;
    case InitialFamily::TanhInterface:
      finite(amplitude, "amplitude");
      finite(center, "center");
      if (!(width > 0.0) || !std::isfinite(width)) throw PreconditionError("width: must be positive");
      break;
    case InitialFamily::RandomSmooth:
      if (!seed) throw PreconditionError("seed: mandatory for random_smooth");
      if (cutoff < 0) throw PreconditionError("cutoff: must be non-negative");
      finite(amplitude, "amplitude");
      break;
  }
}

Field make_initial_field(const InitialDataSpec& spec, const Grid& grid) {
  spec.validate();
  switch (spec.family) {
    case InitialFamily::Constant:
      return Field(grid, spec.value);
    case InitialFamily::CosineBump:
      return Field::sample(grid, [&](const auto& x) {
        double v = 1.0;
        for (int a = 0; a < grid.dim(); ++a) v *= cosine_mode(grid, x, a, spec.mode);
        return spec.offset + spec.amplitude * v;
      });
    case InitialFamily::TanhInterface:
      return Field::sample(grid, [&](const auto& x) {
        double r = x[0];
        if (grid.dim() == 2) r = std::hypot(x[0] - 0.5 * grid.extent(0), x[1] - 0.5 * grid.extent(1));
        return spec.amplitude * std::tanh((r - spec.center) / spec.width);
      });
    case InitialFamily::RandomSmooth:
      break;
  }

  std::mt19937_64 rng(*spec.seed);
  const int modes = spec.cutoff + 1;
  const int count = grid.dim() == 2 ? modes * modes : modes;
  std::vector<double> coeff(count);
  double total = 0.0;
  for (double& c : coeff) {
    c = uniform_pm1(rng);
    total += std::abs(c);
  }
  if (total > 0.0) {
    for (double& c : coeff) c /= total;
  }
  return Field::sample(grid, [&](const auto& x) {
    double v = 0.0;
    for (int m = 0; m < count; ++m) {
      double basis = cosine_mode(grid, x, 0, m % modes);
      if (grid.dim() == 2) basis *= cosine_mode(grid, x, 1, m / modes);
      v += coeff[m] * basis;
    }
    return spec.amplitude * v;
  });
}

}  // namespace caginalp
