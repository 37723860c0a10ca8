#include "caginalp/csv_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include "caginalp/error.hpp"

namespace caginalp {

namespace {

double parse_real(const std::string& s, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw PreconditionError("trajectory csv line " + std::to_string(line_no) +
                            ": not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.emplace_back(line.substr(start));
      return cells;
    }
    cells.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const Grid& g = traj.grid();
  out << (g.dim() == 2 ? "level,t,x,y,theta,phi,xi\n" : "level,t,x,theta,phi,xi\n");
  const double h = traj.h();
  for (const State& s : traj.states) {
    const std::string level = std::to_string(s.level);
    const std::string t = format_real(s.level * h);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto x = g.point(k);
      out << level << ',' << t << ',' << format_real(x[0]) << ',';
      if (g.dim() == 2) out << format_real(x[1]) << ',';
      out << format_real(s.theta[k]) << ',' << format_real(s.phi[k]) << ',';
      if (s.xi) out << format_real((*s.xi)[k]);
      out << '\n';
    }
  }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot open " + path.string() + " for writing");
  write_trajectory_csv(out, traj);
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw PreconditionError("trajectory csv: empty input");
  const std::vector<std::string> header = split_csv_line(line);
  const bool two_d = header.size() == 7 && header[3] == "y";
  const std::vector<std::string> expected =
      two_d ? std::vector<std::string>{"level", "t", "x", "y", "theta", "phi", "xi"}
            : std::vector<std::string>{"level", "t", "x", "theta", "phi", "xi"};
  if (header != expected) throw PreconditionError("trajectory csv: unexpected header '" + line + "'");
  const std::size_t off = two_d ? 1 : 0;

  struct Level {
    double t = 0.0;
    std::vector<double> x, y, theta, phi, xi;
    bool has_xi = false;
  };
  std::vector<Level> levels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> c = split_csv_line(line);
    if (c.size() != expected.size()) {
      throw PreconditionError("trajectory csv line " + std::to_string(line_no) + ": wrong column count");
    }
    const double lv = parse_real(c[0], line_no);
    if (lv < 0 || lv != std::floor(lv) || lv > static_cast<double>(levels.size())) {
      throw PreconditionError("trajectory csv line " + std::to_string(line_no) + ": levels out of order");
    }
    const auto n = static_cast<std::size_t>(lv);
    if (n == levels.size()) {
      levels.emplace_back();
      levels.back().t = parse_real(c[1], line_no);
      levels.back().has_xi = !c[5 + off].empty();
    } else if (n + 1 != levels.size()) {
      throw PreconditionError("trajectory csv line " + std::to_string(line_no) + ": levels out of order");
    }
    Level& L = levels[n];
    L.x.push_back(parse_real(c[2], line_no));
    if (two_d) L.y.push_back(parse_real(c[3], line_no));
    L.theta.push_back(parse_real(c[3 + off], line_no));
    L.phi.push_back(parse_real(c[4 + off], line_no));
    if (L.has_xi) L.xi.push_back(parse_real(c[5 + off], line_no));
  }
  if (levels.size() < 2) throw PreconditionError("trajectory csv: need at least two levels");

  const Level& first = levels.front();
  const std::size_t size = first.x.size();
  int nx = static_cast<int>(size);
  int ny = 1;
  if (two_d) {
    nx = static_cast<int>(std::count(first.y.begin(), first.y.end(), first.y.front()));
    if (nx < 2 || size % nx != 0) throw PreconditionError("trajectory csv: not a tensor grid");
    ny = static_cast<int>(size / nx);
  }
  if (nx < 2 || (two_d && ny < 2)) throw PreconditionError("trajectory csv: grid needs two points per axis");
  const double lx = *std::max_element(first.x.begin(), first.x.end());
  const Grid grid = two_d ? Grid::rectangle(lx, *std::max_element(first.y.begin(), first.y.end()), nx, ny)
                          : Grid::line(lx, nx);
  for (std::size_t k = 0; k < size; ++k) {
    const auto p = grid.point(k);
    const bool ok = std::abs(p[0] - first.x[k]) <= 1e-9 * grid.extent(0) &&
                    (!two_d || std::abs(p[1] - first.y[k]) <= 1e-9 * grid.extent(1));
    if (!ok) throw PreconditionError("trajectory csv: coordinates are not a uniform grid in flat order");
  }

  Trajectory traj;
  traj.params.N = static_cast<int>(levels.size()) - 1;
  traj.params.T = levels.back().t;
  if (!(traj.params.T > 0.0)) throw PreconditionError("trajectory csv: final time must be positive");
  for (std::size_t n = 0; n < levels.size(); ++n) {
    Level& L = levels[n];
    if (L.theta.size() != size) throw PreconditionError("trajectory csv: levels have different sizes");
    State s{static_cast<int>(n), Field(grid, std::move(L.theta)), Field(grid, std::move(L.phi)), std::nullopt};
    if (L.has_xi) s.xi = Field(grid, std::move(L.xi));
    traj.states.push_back(std::move(s));
  }
  return traj;
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path.string());
  return read_trajectory_csv(in);
}

}  // namespace caginalp
