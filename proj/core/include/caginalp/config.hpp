#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "caginalp/grid.hpp"
#include "caginalp/initial_data.hpp"
#include "caginalp/phase_solver.hpp"
#include "caginalp/potential.hpp"
#include "caginalp/source.hpp"
#include "caginalp/stepper.hpp"

namespace caginalp {

inline constexpr int kSchemaVersion = 1;

enum class RunMode { Single, ConvergenceStudy, AprioriSweep, SourceAverageStudy };

std::string_view to_string(RunMode mode);

struct GridConfig {
  std::vector<double> extents{1.0};
  std::vector<int> points{65};
  Truncation truncation = Truncation::BoundedBox;

  int dim() const { return static_cast<int>(extents.size()); }
  Grid make() const;
  bool operator==(const GridConfig&) const = default;
};

struct SourceConfig {
  SourceFamily family = SourceFamily::Zero;
  std::vector<double> amplitudes;  ///< SeparableSinusoid
  double frequency = 1.0;          ///< SeparableSinusoid
  std::string problem;             ///< ManufacturedResidual

  SourceSpec make(const Grid& grid, double ell) const;
  bool operator==(const SourceConfig&) const = default;
};

/// JSON run description. Layout (all sections required except where a
/// default is listed in the README):
///   schema_version, run_id, mode, grid, scheme, potential, initial,
///   source, solver, output
struct RunConfig {
  int schema_version = kSchemaVersion;
  std::string run_id = "run";
  RunMode mode = RunMode::Single;
  GridConfig grid;
  double T = 1.0;
  int N = 16;
  std::vector<int> N_list;  ///< studies
  int N_ref = 0;            ///< convergence study
  double ell = 1.0;
  bool monitor_estimates = false;
  Potential potential = Potential::regular();
  InitialDataSpec theta0;
  InitialDataSpec phi0;
  SourceConfig source;
  StepSolveConfig solver;
  std::string output_dir = "out";

  SchemeParams scheme(int steps) const;
  /// Throws ConfigError with the dotted path of the first bad field.
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates. Unknown keys are rejected.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);
/// Pretty-printed JSON; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& cfg);

}  // namespace caginalp
