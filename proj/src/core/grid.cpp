#include "core/grid.hpp"

#include <cmath>

#include "core/algebra.hpp"
#include "core/errors.hpp"

namespace crossn {

Grid::Grid(int n, std::vector<int> shape, std::size_t budget) : n_(n), shape_(std::move(shape)) {
  if (n_ < 1) throw DomainError("Grid: dimension must be >= 1, got " + std::to_string(n_));
  if (static_cast<int>(shape_.size()) != n_)
    throw DomainError("Grid: shape has " + std::to_string(shape_.size()) +
                      " entries for dimension " + std::to_string(n_));
  volume_ = 1;
  for (int m : shape_) {
    if (m < 1) throw DomainError("Grid: shape entries must be >= 1");
    if (volume_ > budget / static_cast<std::size_t>(m))
      throw ConfigError("Grid: sample budget " + std::to_string(budget) + " exceeded");
    volume_ *= static_cast<std::size_t>(m);
  }
}

double Grid::spacing(int axis) const {
  if (axis < 0 || axis >= n_) throw DomainError("Grid::spacing: axis out of range");
  return 2.0 * M_PI / shape_[axis];
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < n_; ++d) v *= spacing(d);
  return v;
}

void Grid::coords(std::size_t flat, double* x) const {
  for (int d = n_ - 1; d >= 0; --d) {
    std::size_t m = static_cast<std::size_t>(shape_[d]);
    x[d] = 2.0 * M_PI * static_cast<double>(flat % m) / static_cast<double>(m);
    flat /= m;
  }
}

const char* field_kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::Scalar: return "scalar";
    case FieldKind::Vector: return "vector";
    case FieldKind::Cross: return "cross";
    case FieldKind::Matrix: return "matrix";
  }
  return "?";
}

FieldKind field_kind_from_name(const std::string& name) {
  if (name == "scalar") return FieldKind::Scalar;
  if (name == "vector") return FieldKind::Vector;
  if (name == "cross") return FieldKind::Cross;
  if (name == "matrix") return FieldKind::Matrix;
  throw DomainError("unknown field kind '" + name + "'");
}

Field::Field(Grid grid, FieldKind kind, int rows, int cols)
    : grid_(std::move(grid)), kind_(kind), rows_(rows), cols_(cols) {
  if (rows_ < 1 || cols_ < 1) throw DomainError("Field: component block must be at least 1x1");
  switch (kind_) {
    case FieldKind::Scalar:
      if (rows_ != 1 || cols_ != 1) throw DomainError("Field: scalar fields are 1x1");
      break;
    case FieldKind::Vector:
      if (rows_ != grid_.n() || cols_ != 1)
        throw DomainError("Field: vector fields have n components");
      break;
    case FieldKind::Cross:
      if (rows_ != cross_dim(grid_.n()) || cols_ != 1)
        throw DomainError("Field: cross fields have n(n-1)/2 components");
      break;
    case FieldKind::Matrix:
      break;
  }
  data_.assign(static_cast<std::size_t>(rows_) * cols_ * grid_.volume(), 0.0);
}

Field Field::cross_kind(const Grid& g) {
  return Field(g, FieldKind::Cross, cross_dim(g.n()), 1);
}

double* Field::component(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw DomainError("Field::component: index out of range");
  return component_flat(r * cols_ + c);
}

const double* Field::component(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw DomainError("Field::component: index out of range");
  return component_flat(r * cols_ + c);
}

Field Field::transposed() const {
  Field out(grid_, kind_ == FieldKind::Matrix ? FieldKind::Matrix : kind_, cols_, rows_);
  if (kind_ != FieldKind::Matrix && rows_ != cols_)
    throw DomainError("Field::transposed: only matrix fields may transpose");
  const std::size_t v = grid_.volume();
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) {
      const double* src = component(r, c);
      double* dst = out.component(c, r);
      for (std::size_t s = 0; s < v; ++s) dst[s] = src[s];
    }
  return out;
}

void require_same_layout(const Field& a, const Field& b, const char* where) {
  if (!(a.grid() == b.grid()) || a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError(std::string(where) + ": field layouts differ");
}

double linf_norm(const Field& f) {
  double m = 0.0;
  const double* p = f.data();
  for (std::size_t i = 0, e = f.size(); i < e; ++i) m = std::max(m, std::abs(p[i]));
  return m;
}

double l2_norm(const Field& f) {
  double s = 0.0;
  const double* p = f.data();
  for (std::size_t i = 0, e = f.size(); i < e; ++i) s += p[i] * p[i];
  return std::sqrt(s * f.grid().cell_volume());
}

double l2_inner(const Field& a, const Field& b) {
  require_same_layout(a, b, "l2_inner");
  double s = 0.0;
  const double* pa = a.data();
  const double* pb = b.data();
  for (std::size_t i = 0, e = a.size(); i < e; ++i) s += pa[i] * pb[i];
  return s * a.grid().cell_volume();
}

double integral(const Field& f) {
  if (f.components() != 1) throw DomainError("integral: scalar fields only");
  double s = 0.0;
  const double* p = f.data();
  for (std::size_t i = 0, e = f.size(); i < e; ++i) s += p[i];
  return s * f.grid().cell_volume();
}

double component_mean(const Field& f, int comp) {
  const double* p = f.component_flat(comp);
  double s = 0.0;
  const std::size_t v = f.grid().volume();
  for (std::size_t i = 0; i < v; ++i) s += p[i];
  return s / static_cast<double>(v);
}

Field operator+(const Field& a, const Field& b) {
  require_same_layout(a, b, "field +");
  Field out = a;
  double* p = out.data();
  const double* q = b.data();
  for (std::size_t i = 0, e = out.size(); i < e; ++i) p[i] += q[i];
  return out;
}

Field operator-(const Field& a, const Field& b) {
  require_same_layout(a, b, "field -");
  Field out = a;
  double* p = out.data();
  const double* q = b.data();
  for (std::size_t i = 0, e = out.size(); i < e; ++i) p[i] -= q[i];
  return out;
}

Field operator*(double s, const Field& f) {
  Field out = f;
  double* p = out.data();
  for (std::size_t i = 0, e = out.size(); i < e; ++i) p[i] *= s;
  return out;
}

double max_abs_diff(const Field& a, const Field& b) {
  require_same_layout(a, b, "max_abs_diff");
  double m = 0.0;
  const double* pa = a.data();
  const double* pb = b.data();
  for (std::size_t i = 0, e = a.size(); i < e; ++i) m = std::max(m, std::abs(pa[i] - pb[i]));
  return m;
}

namespace {
Field half_sum(const Field& f, double sign) {
  if (f.rows() != f.cols()) throw DomainError("sym/skew part: square matrix fields only");
  Field t = f.transposed();
  Field out = f;
  double* p = out.data();
  const double* q = t.data();
  for (std::size_t i = 0, e = out.size(); i < e; ++i) p[i] = 0.5 * (p[i] + sign * q[i]);
  return out;
}
}  // namespace

Field sym_part(const Field& f) { return half_sum(f, 1.0); }
Field skew_part(const Field& f) { return half_sum(f, -1.0); }

}  // namespace crossn
