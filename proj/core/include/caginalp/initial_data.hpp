#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "caginalp/grid.hpp"

namespace caginalp {

enum class InitialFamily { Constant, CosineBump, TanhInterface, RandomSmooth };

std::string_view to_string(InitialFamily family);
/// "constant", "cosine_bump", "tanh_interface", "random_smooth"; throws
/// PreconditionError otherwise.
InitialFamily parse_initial_family(std::string_view name);

/// Named initial-data families. Unused fields keep their defaults and
/// specs compare equal after a config round trip.
struct InitialDataSpec {
  InitialFamily family = InitialFamily::Constant;
  double value = 0.0;      ///< Constant
  double amplitude = 0.0;  ///< CosineBump, TanhInterface, RandomSmooth
  int mode = 1;            ///< CosineBump
  double offset = 0.0;     ///< CosineBump
  double center = 0.5;     ///< TanhInterface: interface position (radius in 2D)
  double width = 0.1;      ///< TanhInterface
  std::optional<std::uint64_t> seed;  ///< RandomSmooth, mandatory
  int cutoff = 4;          ///< RandomSmooth: highest cosine mode per axis

  static InitialDataSpec constant(double value);
  /// offset + amplitude * prod_axis cos(mode pi x_axis / L_axis)
  static InitialDataSpec cosine_bump(double amplitude, int mode, double offset = 0.0);
  /// amplitude * tanh((x - center) / width); in 2D the distance from the
  /// box midpoint replaces x.
  static InitialDataSpec tanh_interface(double center, double width, double amplitude = 1.0);
  /// amplitude * sum_{modes <= cutoff} c_m prod cos(m_a pi x_a / L_a) with
  /// c_m uniform in [-1, 1] drawn from mt19937_64(seed) and normalised by
  /// sum |c_m|, so |u| <= amplitude.
  static InitialDataSpec random_smooth(std::uint64_t seed, int cutoff, double amplitude);

  /// Throws PreconditionError naming the bad field (without prefix).
  void validate() const;
  bool operator==(const InitialDataSpec&) const = default;
};

Field make_initial_field(const InitialDataSpec& spec, const Grid& grid);

}  // namespace caginalp
