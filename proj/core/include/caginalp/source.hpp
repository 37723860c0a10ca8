#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "caginalp/grid.hpp"

namespace caginalp {

enum class SourceFamily { Zero, SeparableSinusoid, ManufacturedResidual, Custom };
enum class TimeRegularity { L2Only, W11 };

std::string_view to_string(SourceFamily family);

/// Heat source f(t, x) for the temperature equation, plus an optional
/// forcing of the phase equation (used only by manufactured solutions).
class SourceSpec {
 public:
  using Point = std::array<double, Grid::kMaxDim>;
  using Fn = std::function<double(double t, const Point& x)>;

  static SourceSpec zero();

  /// f(t, x) = sin(frequency t) * sum_m a_m prod_axis cos(m pi x_axis / length_axis).
  /// Mode 0 is the constant profile.
  static SourceSpec separable_sinusoid(std::vector<double> amplitudes, double frequency,
                                       std::array<double, Grid::kMaxDim> lengths);

  /// Residuals that make theta = phi = exp(-t) cos(pi x / L) an exact
  /// solution for the Regular potential on [0, L] (problem id
  /// "cosine_decay"). Both equations receive a forcing.
  static SourceSpec manufactured_residual(std::string_view problem, double ell, double length);

  /// Arbitrary source for tests and studies; `dt` may be empty (L2Only).
  static SourceSpec custom(Fn f, Fn dt = {});

  SourceFamily family() const noexcept { return family_; }
  TimeRegularity regularity() const noexcept { return dt_ ? TimeRegularity::W11 : TimeRegularity::L2Only; }
  bool has_phase_forcing() const noexcept { return static_cast<bool>(phase_); }

  double operator()(double t, const Point& x) const { return f_(t, x); }
  /// Time derivative; throws PreconditionError for L2Only sources.
  double time_derivative(double t, const Point& x) const;
  double phase_forcing(double t, const Point& x) const { return phase_ ? phase_(t, x) : 0.0; }

  /// Exact solution of the manufactured problem (theta = phi), else throws.
  double manufactured_solution(double t, const Point& x) const;

  Field sample(const Grid& grid, double t) const;
  Field sample_time_derivative(const Grid& grid, double t) const;

 private:
  SourceFamily family_ = SourceFamily::Zero;
  Fn f_;
  Fn dt_;
  Fn phase_;
  Fn exact_;
};

/// Five-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre5 {
  static constexpr std::array<double, 5> nodes{
      -0.90617984593866399280, -0.53846931010568309104, 0.0, 0.53846931010568309104,
      0.90617984593866399280};
  static constexpr std::array<double, 5> weights{
      0.23692688505618908751, 0.47862867049936646804, 0.56888888888888888889,
      0.47862867049936646804, 0.23692688505618908751};
};

/// Interval averages f_k = (1/h) int_{(k-1)h}^{kh} f, k = 1..N, per grid
/// point, by 5-point Gauss-Legendre (exact for polynomials of degree <= 9).
std::vector<Field> average_source(const SourceSpec& src, const Grid& grid, double T, int N);

/// Averaged forcing of both equations; `phase` is empty when the source has
/// no phase forcing.
struct Forcing {
  std::vector<Field> theta;
  std::vector<Field> phase;
};

Forcing average_forcing(const SourceSpec& src, const Grid& grid, double T, int N);

}  // namespace caginalp
