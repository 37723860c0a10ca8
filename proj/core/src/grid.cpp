#include "caginalp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "caginalp/csv_io.hpp"
#include "caginalp/error.hpp"

namespace caginalp {

std::string_view to_string(Truncation t) {
  return t == Truncation::BoundedBox ? "bounded_box" : "truncated_whole_space";
}

Truncation parse_truncation(std::string_view name) {
  if (name == "bounded_box") return Truncation::BoundedBox;
  if (name == "truncated_whole_space") return Truncation::TruncatedWholeSpace;
  throw PreconditionError("unknown truncation tag '" + std::string(name) + "'");
}

Grid::Grid(std::span<const double> extents, std::span<const int> points, Truncation truncation)
    : truncation_(truncation) {
  if (extents.size() != points.size() || extents.empty() ||
      extents.size() > static_cast<std::size_t>(kMaxDim)) {
    throw PreconditionError("grid: dim must be 1 or 2 with one extent and point count per axis");
  }
  dim_ = static_cast<int>(extents.size());
  size_ = 1;
  for (int a = 0; a < dim_; ++a) {
    if (!(extents[a] > 0.0) || !std::isfinite(extents[a])) {
      throw PreconditionError("grid: extent must be positive and finite");
    }
    if (points[a] < 3) throw PreconditionError("grid: at least 3 points per axis");
    extents_[a] = extents[a];
    points_[a] = points[a];
    size_ *= static_cast<std::size_t>(points[a]);
  }
}

Grid Grid::line(double extent, int points, Truncation truncation) {
  const double e[1] = {extent};
  const int n[1] = {points};
  return Grid(e, n, truncation);
}

Grid Grid::rectangle(double extent_x, double extent_y, int points_x, int points_y,
                     Truncation truncation) {
  const double e[2] = {extent_x, extent_y};
  const int n[2] = {points_x, points_y};
  return Grid(e, n, truncation);
}

std::array<double, Grid::kMaxDim> Grid::point(std::size_t flat) const {
  std::array<double, kMaxDim> x{0.0, 0.0};
  const int i = static_cast<int>(flat % points_[0]);
  x[0] = coordinate(0, i);
  if (dim_ == 2) x[1] = coordinate(1, static_cast<int>(flat / points_[0]));
  return x;
}

double Grid::weight(std::size_t flat) const {
  const int i = static_cast<int>(flat % points_[0]);
  double w = spacing(0) * ((i == 0 || i == points_[0] - 1) ? 0.5 : 1.0);
  if (dim_ == 2) {
    const int j = static_cast<int>(flat / points_[0]);
    w *= spacing(1) * ((j == 0 || j == points_[1] - 1) ? 0.5 : 1.0);
  }
  return w;
}

double Grid::volume() const {
  double v = extents_[0];
  if (dim_ == 2) v *= extents_[1];
  return v;
}

Field::Field(const Grid& grid, double value) : grid_(grid), values_(grid.size(), value) {}

Field::Field(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw PreconditionError("field: value count " + std::to_string(values_.size()) +
                            " does not match grid size " + std::to_string(grid_.size()));
  }
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Field& Field::operator+=(const Field& other) { return axpy(1.0, other); }
Field& Field::operator-=(const Field& other) { return axpy(-1.0, other); }

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Field& Field::axpy(double a, const Field& x) {
  require_same_grid(grid_, x.grid_, "field arithmetic");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += a * x.values_[k];
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

void require_same_grid(const Grid& a, const Grid& b, std::string_view where) {
  if (!(a == b)) throw GridMismatchError(std::string(where) + ": fields live on different grids");
}

void apply_neumann_laplacian(const Grid& grid, std::span<const double> in, std::span<double> out) {
  const int nx = grid.points(0);
  const double ix2 = 1.0 / (grid.spacing(0) * grid.spacing(0));
  const int ny = grid.dim() == 2 ? grid.points(1) : 1;
  for (int j = 0; j < ny; ++j) {
    const double* row = in.data() + static_cast<std::size_t>(j) * nx;
    double* dst = out.data() + static_cast<std::size_t>(j) * nx;
    dst[0] = 2.0 * (row[1] - row[0]) * ix2;
    for (int i = 1; i < nx - 1; ++i) dst[i] = (row[i - 1] - 2.0 * row[i] + row[i + 1]) * ix2;
    dst[nx - 1] = 2.0 * (row[nx - 2] - row[nx - 1]) * ix2;
  }
  if (grid.dim() == 2) {
    const double iy2 = 1.0 / (grid.spacing(1) * grid.spacing(1));
    for (int j = 0; j < ny; ++j) {
      const std::size_t c = static_cast<std::size_t>(j) * nx;
      // mirror: the ghost row equals the first interior row
      const std::size_t below = j == 0 ? c + nx : c - nx;
      const std::size_t above = j == ny - 1 ? c - nx : c + nx;
      for (int i = 0; i < nx; ++i) {
        out[c + i] += (in[below + i] - 2.0 * in[c + i] + in[above + i]) * iy2;
      }
    }
  }
}

Field neumann_laplacian(const Field& u) {
  Field out(u.grid());
  apply_neumann_laplacian(u.grid(), u.values(), out.values());
  return out;
}

double inner_h(const Field& u, const Field& v) {
  require_same_grid(u.grid(), v.grid(), "inner_h");
  const Grid& g = u.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) sum += g.weight(k) * u[k] * v[k];
  return sum;
}

double norm_h(const Field& u) { return std::sqrt(inner_h(u, u)); }

double gradient_form(const Field& u, const Field& v) {
  require_same_grid(u.grid(), v.grid(), "gradient_form");
  const Grid& g = u.grid();
  const int nx = g.points(0);
  const int ny = g.dim() == 2 ? g.points(1) : 1;
  const double sx = g.spacing(0);
  double sum = 0.0;
  // x-edges carry the trapezoidal weight of the transverse axis
  for (int j = 0; j < ny; ++j) {
    double wy = 1.0;
    if (g.dim() == 2) wy = g.spacing(1) * ((j == 0 || j == ny - 1) ? 0.5 : 1.0);
    const std::size_t c = static_cast<std::size_t>(j) * nx;
    double row = 0.0;
    for (int i = 0; i + 1 < nx; ++i) {
      row += (u[c + i + 1] - u[c + i]) * (v[c + i + 1] - v[c + i]);
    }
    sum += wy * row / sx;
  }
  if (g.dim() == 2) {
    const double sy = g.spacing(1);
    for (int j = 0; j + 1 < ny; ++j) {
      const std::size_t c = static_cast<std::size_t>(j) * nx;
      double row = 0.0;
      for (int i = 0; i < nx; ++i) {
        const double wx = sx * ((i == 0 || i == nx - 1) ? 0.5 : 1.0);
        row += wx * (u[c + nx + i] - u[c + i]) * (v[c + nx + i] - v[c + i]);
      }
      sum += row / sy;
    }
  }
  return sum;
}

double inner_v(const Field& u, const Field& v) { return gradient_form(u, v) + inner_h(u, v); }

double norm_v(const Field& u) { return std::sqrt(inner_v(u, u)); }

double integral(const Field& u) {
  const Grid& g = u.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) sum += g.weight(k) * u[k];
  return sum;
}

void write_field_csv(std::ostream& out, const Field& u, std::string_view value_name) {
  const Grid& g = u.grid();
  out << (g.dim() == 2 ? "x,y," : "x,") << value_name << '\n';
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto x = g.point(k);
    out << format_real(x[0]) << ',';
    if (g.dim() == 2) out << format_real(x[1]) << ',';
    out << format_real(u[k]) << '\n';
  }
}

}  // namespace caginalp
