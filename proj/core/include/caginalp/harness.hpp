#pragma once

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "caginalp/config.hpp"
#include "caginalp/estimates.hpp"
#include "caginalp/stepper.hpp"

namespace caginalp {

/// Worker count for study job pools: CAGINALP_THREADS if set to a positive
/// integer, else the hardware concurrency (at least 1).
int harness_thread_count();

/// Runs jobs 0..count-1 on `threads` workers; job i writes only slot i, so
/// results do not depend on scheduling. The first exception is rethrown
/// after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& job);

struct ConvergenceRow {
  int N = 0;
  double h = 0.0;
  ErrorReport errors;
};

struct ConvergenceResult {
  int N_ref = 0;
  std::vector<ConvergenceRow> rows;
  /// Least-squares log-log slope per ErrorReport::names() entry.
  std::vector<double> slopes;

  bool pass(double threshold = 0.4) const;
};

/// Runs the reference once and every coarse N, each from the same data on
/// the same grid, and fits the error slopes.
ConvergenceResult convergence_study(const SchemeParams& base, const Field& theta0, const Field& phi0,
                                    const SourceSpec& source, std::span<const int> N_list, int N_ref,
                                    int threads = 1);

struct SweepRow {
  int N = 0;
  double h = 0.0;
  NormReport norms;
};

struct UniformityRow {
  std::string norm;
  double min = 0.0;
  double max = 0.0;
  /// max / min; 1 when both vanish, infinite when only min does.
  double ratio() const;
};

std::vector<UniformityRow> uniformity(std::span<const SweepRow> rows);

std::vector<SweepRow> apriori_sweep(const SchemeParams& base, const Field& theta0, const Field& phi0,
                                    const SourceSpec& source, std::span<const int> N_list,
                                    int threads = 1);

struct HarnessResult {
  int exit_code = 0;
  std::string message;
  std::vector<std::filesystem::path> artifacts;
};

/// mode == Single: trajectory_<run_id>.csv, diagnostics.csv,
/// identities.csv and, when h < h1, estimates.csv. Creates `out_dir`.
HarnessResult run_single(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// ConvergenceStudy: errors.csv, rates.csv. AprioriSweep: estimates.csv,
/// uniformity.csv. SourceAverageStudy: source_average.csv, rates.csv.
HarnessResult run_study(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Reads a trajectory CSV, writes identities.csv next to `out_dir` (if
/// non-empty) and reports whether all checks hold to `tolerance`.
HarnessResult check_trajectory_identities(const std::filesystem::path& trajectory,
                                          const std::filesystem::path& out_dir, double tolerance);

}  // namespace caginalp
