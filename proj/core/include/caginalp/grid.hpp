#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace caginalp {

/// Metadata only: a TruncatedWholeSpace grid stands in for an unbounded
/// domain (whole space, exterior domain, half space) cut to a box with
/// Neumann walls.
enum class Truncation { BoundedBox, TruncatedWholeSpace };

std::string_view to_string(Truncation t);
Truncation parse_truncation(std::string_view name);

/// Uniform vertex-centred tensor grid on [0, L_0] x [0, L_1], dim 1 or 2.
/// Point (i, j) has flat index i + n_0 * j.
class Grid {
 public:
  static constexpr int kMaxDim = 2;

  Grid(std::span<const double> extents, std::span<const int> points,
       Truncation truncation = Truncation::BoundedBox);

  static Grid line(double extent, int points, Truncation truncation = Truncation::BoundedBox);
  static Grid rectangle(double extent_x, double extent_y, int points_x, int points_y,
                        Truncation truncation = Truncation::BoundedBox);

  int dim() const noexcept { return dim_; }
  double extent(int axis) const { return extents_.at(axis); }
  int points(int axis) const { return points_.at(axis); }
  double spacing(int axis) const { return extents_.at(axis) / (points_.at(axis) - 1); }
  std::size_t size() const noexcept { return size_; }
  Truncation truncation() const noexcept { return truncation_; }

  double coordinate(int axis, int index) const { return index * spacing(axis); }
  /// Coordinates of a flat index; unused axes are 0.
  std::array<double, kMaxDim> point(std::size_t flat) const;
  /// Trapezoidal quadrature weight of a flat index.
  double weight(std::size_t flat) const;
  /// Measure of the box.
  double volume() const;

  bool operator==(const Grid&) const = default;

 private:
  int dim_ = 1;
  std::array<double, kMaxDim> extents_{1.0, 1.0};
  std::array<int, kMaxDim> points_{3, 1};
  std::size_t size_ = 3;
  Truncation truncation_ = Truncation::BoundedBox;
};

/// Grid function. Values are stored in flat index order.
class Field {
 public:
  explicit Field(const Grid& grid, double value = 0.0);
  Field(const Grid& grid, std::vector<double> values);

  template <class Fn>
  static Field sample(const Grid& grid, Fn&& fn) {
    Field out(grid);
    for (std::size_t k = 0; k < grid.size(); ++k) out.values_[k] = fn(grid.point(k));
    return out;
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double& operator[](std::size_t k) { return values_[k]; }

  bool all_finite() const;
  double max_abs() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);
  /// this += a * x
  Field& axpy(double a, const Field& x);

  bool operator==(const Field&) const = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// Throws GridMismatchError when the grids differ.
void require_same_grid(const Grid& a, const Grid& b, std::string_view where);

/// Second-order Laplacian with ghost-point mirroring at every wall
/// (u_{-1} = u_1), i.e. homogeneous Neumann data. Self-adjoint and negative
/// semidefinite in the trapezoidal inner product; constants are its kernel.
void apply_neumann_laplacian(const Grid& grid, std::span<const double> in, std::span<double> out);
Field neumann_laplacian(const Field& u);

/// Trapezoidal L2 inner product (u, v)_H.
double inner_h(const Field& u, const Field& v);
double norm_h(const Field& u);
/// Discrete Dirichlet form sum over grid edges of the difference quotients.
/// Satisfies gradient_form(u, v) == inner_h(-neumann_laplacian(u), v) up to
/// rounding (summation by parts).
double gradient_form(const Field& u, const Field& v);
/// (u, v)_V = gradient_form(u, v) + inner_h(u, v).
double inner_v(const Field& u, const Field& v);
double norm_v(const Field& u);
/// Trapezoidal integral.
double integral(const Field& u);

/// One row per point: coordinates then value, 17 significant digits.
void write_field_csv(std::ostream& out, const Field& u, std::string_view value_name = "value");

}  // namespace caginalp
