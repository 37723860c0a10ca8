#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "caginalp/stepper.hpp"

namespace caginalp {

/// Shortest-round-trip-safe text form: 17 significant digits.
std::string format_real(double x);

/// Writes `cells` comma-separated and terminated by a newline.
void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

/// Splits one CSV line on commas (no quoting).
std::vector<std::string> split_csv_line(std::string_view line);

/// Columns: level,t,x[,y],theta,phi,xi; one row per (level, point), levels
/// in order, points in flat order. xi is empty at level 0.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

/// Rebuilds a trajectory from write_trajectory_csv output. The grid is
/// recovered from the coordinates, T from the last time level; ell, the
/// potential and the sources are not stored and keep their defaults.
/// Throws PreconditionError on malformed input.
Trajectory read_trajectory_csv(std::istream& in);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

}  // namespace caginalp
