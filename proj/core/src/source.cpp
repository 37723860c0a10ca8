#include "caginalp/source.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "caginalp/error.hpp"

namespace caginalp {

std::string_view to_string(SourceFamily family) {
  switch (family) {
    case SourceFamily::Zero:
      return "zero";
    case SourceFamily::SeparableSinusoid:
      return "separable_sinusoid";
    case SourceFamily::ManufacturedResidual:
      return "manufactured_residual";
    case SourceFamily::Custom:
      return "custom";
  }
  return "unknown";
}

SourceSpec SourceSpec::zero() {
  SourceSpec s;
  s.family_ = SourceFamily::Zero;
  s.f_ = [](double, const Point&) { return 0.0; };
  s.dt_ = s.f_;
  return s;
}

SourceSpec SourceSpec::separable_sinusoid(std::vector<double> amplitudes, double frequency,
                                          std::array<double, Grid::kMaxDim> lengths) {
  if (amplitudes.empty()) throw PreconditionError("separable sinusoid: no amplitudes");
  for (double len : lengths) {
    if (!(len > 0.0)) throw PreconditionError("separable sinusoid: lengths must be positive");
  }
  auto profile = [amplitudes, lengths](const Point& x) {
    double sum = 0.0;
    for (std::size_t m = 0; m < amplitudes.size(); ++m) {
      const double k = static_cast<double>(m) * std::numbers::pi;
      sum += amplitudes[m] * std::cos(k * x[0] / lengths[0]) * std::cos(k * x[1] / lengths[1]);
    }
    return sum;
  };
  SourceSpec s;
  s.family_ = SourceFamily::SeparableSinusoid;
  s.f_ = [profile, frequency](double t, const Point& x) {
    return std::sin(frequency * t) * profile(x);
  };
  s.dt_ = [profile, frequency](double t, const Point& x) {
    return frequency * std::cos(frequency * t) * profile(x);
  };
  return s;
}

SourceSpec SourceSpec::manufactured_residual(std::string_view problem, double ell, double length) {
  if (problem != "cosine_decay") {
    throw PreconditionError("manufactured residual: unknown problem '" + std::string(problem) + "'");
  }
  if (!(length > 0.0)) throw PreconditionError("manufactured residual: length must be positive");
  const double k2 = std::numbers::pi * std::numbers::pi / (length * length);
  auto exact = [length](double t, const Point& x) {
    return std::exp(-t) * std::cos(std::numbers::pi * x[0] / length);
  };
  SourceSpec s;
  s.family_ = SourceFamily::ManufacturedResidual;
  s.exact_ = exact;
  // d/dt (u + ell u) - Lap u = (k^2 - 1 - ell) u
  s.f_ = [=](double t, const Point& x) { return (k2 - 1.0 - ell) * exact(t, x); };
  s.dt_ = [=](double t, const Point& x) { return -(k2 - 1.0 - ell) * exact(t, x); };
  // d/dt u - Lap u + u^3 - u - ell u
  s.phase_ = [=](double t, const Point& x) {
    const double u = exact(t, x);
    return (k2 - 2.0 - ell) * u + u * u * u;
  };
  return s;
}

SourceSpec SourceSpec::custom(Fn f, Fn dt) {
  if (!f) throw PreconditionError("custom source: empty function");
  SourceSpec s;
  s.family_ = SourceFamily::Custom;
  s.f_ = std::move(f);
  s.dt_ = std::move(dt);
  return s;
}

double SourceSpec::time_derivative(double t, const Point& x) const {
  if (!dt_) throw PreconditionError("source has no time derivative (L2-only regularity)");
  return dt_(t, x);
}

double SourceSpec::manufactured_solution(double t, const Point& x) const {
  if (!exact_) throw PreconditionError("source has no manufactured solution");
  return exact_(t, x);
}

Field SourceSpec::sample(const Grid& grid, double t) const {
  return Field::sample(grid, [&](const Point& x) { return f_(t, x); });
}

Field SourceSpec::sample_time_derivative(const Grid& grid, double t) const {
  return Field::sample(grid, [&](const Point& x) { return time_derivative(t, x); });
}

namespace {

template <class Fn>
std::vector<Field> interval_averages(const Fn& fn, const Grid& grid, double T, int N) {
  if (!(T > 0.0) || N < 1) throw PreconditionError("average_source: need T > 0 and N >= 1");
  const double h = T / N;
  std::vector<Field> out;
  out.reserve(N);
  for (int k = 1; k <= N; ++k) {
    const double mid = (k - 0.5) * h;
    Field avg(grid);
    for (std::size_t q = 0; q < GaussLegendre5::nodes.size(); ++q) {
      const double t = mid + 0.5 * h * GaussLegendre5::nodes[q];
      const double w = 0.5 * GaussLegendre5::weights[q];
      for (std::size_t p = 0; p < grid.size(); ++p) avg[p] += w * fn(t, grid.point(p));
    }
    out.push_back(std::move(avg));
  }
  return out;
}

}  // namespace

std::vector<Field> average_source(const SourceSpec& src, const Grid& grid, double T, int N) {
  return interval_averages(src, grid, T, N);
}

Forcing average_forcing(const SourceSpec& src, const Grid& grid, double T, int N) {
  Forcing out;
  out.theta = average_source(src, grid, T, N);
  if (src.has_phase_forcing()) {
    out.phase = interval_averages(
        [&](double t, const SourceSpec::Point& x) { return src.phase_forcing(t, x); }, grid, T, N);
  }
  return out;
}

}  // namespace caginalp
