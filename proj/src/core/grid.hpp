#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace crossn {

// Uniform periodic grid on [0, 2pi)^n: shape[d] samples along axis d at
// x_d = 2pi i / shape[d].  Sample count is capped by a budget so desk-scale
// mistakes (e.g. 64^6) fail fast instead of thrashing.
inline constexpr std::size_t kDefaultSampleBudget = std::size_t{1} << 24;

class Grid {
public:
  Grid(int n, std::vector<int> shape, std::size_t budget = kDefaultSampleBudget);

  int n() const { return n_; }
  const std::vector<int>& shape() const { return shape_; }
  std::size_t volume() const { return volume_; }
  double spacing(int axis) const;          // 2pi / shape[axis], axis 0-based
  double cell_volume() const;              // product of spacings
  bool operator==(const Grid& o) const { return n_ == o.n_ && shape_ == o.shape_; }

  // Coordinates of the flat sample index (row-major, last axis fastest).
  void coords(std::size_t flat, double* x) const;

private:
  int n_;
  std::vector<int> shape_;
  std::size_t volume_;
};

enum class FieldKind { Scalar, Vector, Cross, Matrix };

const char* field_kind_name(FieldKind k);
FieldKind field_kind_from_name(const std::string& name);

// Sampled field over a Grid with a fixed component block per sample: 1x1 for
// scalars, n x 1 for vectors, N x 1 for cross fields, r x c for matrix fields.
// Storage is component-major: component (r, c) occupies one contiguous slab of
// volume() samples, slabs ordered row-major over (r, c), samples row-major
// over the grid (matching the transform layout).
class Field {
public:
  Field(Grid grid, FieldKind kind, int rows, int cols);

  static Field scalar(const Grid& g) { return Field(g, FieldKind::Scalar, 1, 1); }
  static Field vector(const Grid& g) { return Field(g, FieldKind::Vector, g.n(), 1); }
  static Field cross_kind(const Grid& g);
  static Field matrix(const Grid& g, int rows, int cols) {
    return Field(g, FieldKind::Matrix, rows, cols);
  }

  const Grid& grid() const { return grid_; }
  FieldKind kind() const { return kind_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int components() const { return rows_ * cols_; }
  std::size_t size() const { return data_.size(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* component(int r, int c = 0);
  const double* component(int r, int c = 0) const;
  double* component_flat(int idx) { return data_.data() + static_cast<std::size_t>(idx) * grid_.volume(); }
  const double* component_flat(int idx) const { return data_.data() + static_cast<std::size_t>(idx) * grid_.volume(); }

  // Relabels the component block r x c -> c x r; sample data is copied.
  Field transposed() const;

private:
  Grid grid_;
  FieldKind kind_;
  int rows_, cols_;
  std::vector<double> data_;
};

// Pointwise helpers used throughout the operator and test code.
double linf_norm(const Field& f);
double l2_norm(const Field& f);                 // sqrt of the integral of |f|^2
double l2_inner(const Field& a, const Field& b);  // integral of the pointwise (Frobenius) product
double integral(const Field& f);                // scalar fields only
double component_mean(const Field& f, int comp);
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& f);
double max_abs_diff(const Field& a, const Field& b);

// Pointwise symmetric / antisymmetric part of a square matrix field.
Field sym_part(const Field& f);
Field skew_part(const Field& f);

void require_same_layout(const Field& a, const Field& b, const char* where);

}  // namespace crossn
