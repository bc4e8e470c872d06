#include "core/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/spectral.hpp"

namespace crossn {

namespace {

// One accumulation sign * d/dx_axis (in component) -> (out component).
struct Term {
  int out_comp;
  int in_comp;
  double sign;
  int axis;
};

// Nonzeros of [[.]] as (row k, column, sign, which entry of the vector).
struct PatternEntry {
  int k;
  int col;
  double sign;
  int axis;
};

std::vector<PatternEntry> cross_pattern(int n) {
  std::vector<PatternEntry> p;
  p.reserve(2 * cross_dim(n));
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      p.push_back({k, j, +1.0, i});
      p.push_back({k, i, -1.0, j});
    }
  return p;
}

void central2_check(const Grid& g) {
  for (int m : g.shape())
    if (m < 3)
      throw ConfigError("central2 backend needs at least 3 samples per axis, got " +
                        std::to_string(m));
}

// out[comp] += sign * d_axis in[comp] with a periodic centered difference.
void central2_accumulate(const Field& in, int in_comp, Field& out, int out_comp, double sign,
                         int axis) {
  const Grid& g = in.grid();
  const auto& shape = g.shape();
  std::size_t stride = 1;
  for (int d = g.n() - 1; d > axis; --d) stride *= static_cast<std::size_t>(shape[d]);
  const std::size_t m = static_cast<std::size_t>(shape[axis]);
  const double w = sign / (2.0 * g.spacing(axis));
  const double* src = in.component_flat(in_comp);
  double* dst = out.component_flat(out_comp);
  const std::size_t v = g.volume();
  for (std::size_t s = 0; s < v; ++s) {
    const std::size_t i = (s / stride) % m;
    const std::size_t up = (i + 1 == m) ? s + stride - m * stride : s + stride;
    const std::size_t dn = (i == 0) ? s + (m - 1) * stride : s - stride;
    dst[s] += w * (src[up] - src[dn]);
  }
}

// Applies a first-order term table with one forward transform per used input
// component and one inverse per output component (spectral), or direct
// stencil accumulation (central differences).
Field apply_first_order(const Field& in, FieldKind okind, int orows, int ocols,
                        const std::vector<Term>& terms, Backend backend) {
  const Grid& g = in.grid();
  Field out(g, okind, orows, ocols);
  if (backend == Backend::Central2) {
    central2_check(g);
    for (const Term& t : terms)
      central2_accumulate(in, t.in_comp, out, t.out_comp, t.sign, t.axis);
    return out;
  }
  SpectralPlan& plan = plan_for(g);
  const std::size_t S = plan.spec_size();
  std::map<int, std::vector<std::complex<double>>> spectra;
  for (const Term& t : terms)
    if (!spectra.count(t.in_comp)) spectra[t.in_comp] = plan.forward(in.component_flat(t.in_comp));
  std::vector<std::complex<double>> acc(S);
  for (int oc = 0; oc < out.components(); ++oc) {
    std::fill(acc.begin(), acc.end(), std::complex<double>(0.0, 0.0));
    bool any = false;
    for (const Term& t : terms) {
      if (t.out_comp != oc) continue;
      any = true;
      const auto& kax = plan.axis_wavenumbers(t.axis, /*derivative_mode=*/true);
      const auto& src = spectra[t.in_comp];
      for (std::size_t s = 0; s < S; ++s) {
        // multiply by sign * i * k
        const double w = t.sign * kax[s];
        acc[s] += std::complex<double>(-w * src[s].imag(), w * src[s].real());
      }
    }
    if (any) plan.backward(acc.data(), out.component_flat(oc));
  }
  return out;
}

void require_vector(const Field& f, const char* where) {
  if (f.kind() != FieldKind::Vector)
    throw DomainError(std::string(where) + ": vector field required");
}

void require_scalar(const Field& f, const char* where) {
  if (f.kind() != FieldKind::Scalar)
    throw DomainError(std::string(where) + ": scalar field required");
}

void require_cross(const Field& f, const char* where) {
  if (f.kind() != FieldKind::Cross)
    throw DomainError(std::string(where) + ": cross field required");
}

void require_matrix_cols(const Field& f, int cols, const char* where) {
  if (f.cols() != cols)
    throw DomainError(std::string(where) + ": field has " + std::to_string(f.cols()) +
                      " columns, expected " + std::to_string(cols));
}

}  // namespace

Field partial(const Field& f, int axis, Backend backend) {
  if (axis < 0 || axis >= f.grid().n()) throw DomainError("partial: axis out of range");
  std::vector<Term> terms;
  for (int c = 0; c < f.components(); ++c) terms.push_back({c, c, 1.0, axis});
  return apply_first_order(f, f.kind(), f.rows(), f.cols(), terms, backend);
}

Field grad(const Field& f, Backend b) {
  require_scalar(f, "grad");
  const int n = f.grid().n();
  std::vector<Term> terms;
  for (int d = 0; d < n; ++d) terms.push_back({d, 0, 1.0, d});
  return apply_first_order(f, FieldKind::Vector, n, 1, terms, b);
}

Field divergence(const Field& a, Backend b) {
  require_vector(a, "divergence");
  const int n = a.grid().n();
  std::vector<Term> terms;
  for (int d = 0; d < n; ++d) terms.push_back({0, d, 1.0, d});
  return apply_first_order(a, FieldKind::Scalar, 1, 1, terms, b);
}

Field curl_n(const Field& a, Backend b) {
  require_vector(a, "curl_n");
  const int n = a.grid().n();
  std::vector<Term> terms;
  for (const auto& e : cross_pattern(n)) terms.push_back({e.k, e.col, e.sign, e.axis});
  return apply_first_order(a, FieldKind::Cross, cross_dim(n), 1, terms, b);
}

Field adjoint_curl(const Field& g, Backend b) {
  require_cross(g, "adjoint_curl");
  const int n = g.grid().n();
  std::vector<Term> terms;
  for (const auto& e : cross_pattern(n)) terms.push_back({e.col, e.k, e.sign, e.axis});
  return apply_first_order(g, FieldKind::Vector, n, 1, terms, b);
}

Field derivative(const Field& a, Backend b) {
  if (a.cols() != 1) throw DomainError("derivative: single-column field required");
  const int n = a.grid().n();
  const int m = a.rows();
  std::vector<Term> terms;
  for (int r = 0; r < m; ++r)
    for (int d = 0; d < n; ++d) terms.push_back({r * n + d, r, 1.0, d});
  return apply_first_order(a, FieldKind::Matrix, m, n, terms, b);
}

Field matrix_divergence(const Field& P, Backend b) {
  const int n = P.grid().n();
  require_matrix_cols(P, n, "matrix_divergence");
  const int m = P.rows();
  std::vector<Term> terms;
  for (int r = 0; r < m; ++r)
    for (int d = 0; d < n; ++d) terms.push_back({r, r * n + d, 1.0, d});
  const FieldKind kind = (m == n) ? FieldKind::Vector : FieldKind::Matrix;
  return apply_first_order(P, kind, m, 1, terms, b);
}

Field matrix_curl(const Field& P, Backend b) {
  const int n = P.grid().n();
  require_matrix_cols(P, n, "matrix_curl");
  const int m = P.rows();
  const int N = cross_dim(n);
  std::vector<Term> terms;
  for (int r = 0; r < m; ++r)
    for (const auto& e : cross_pattern(n))
      terms.push_back({r * N + e.k, r * n + e.col, e.sign, e.axis});
  return apply_first_order(P, FieldKind::Matrix, m, N, terms, b);
}

Field matrix_adjoint(const Field& W, Backend b) {
  const int n = W.grid().n();
  const int N = cross_dim(n);
  require_matrix_cols(W, N, "matrix_adjoint");
  const int m = W.rows();
  std::vector<Term> terms;
  for (int r = 0; r < m; ++r)
    for (const auto& e : cross_pattern(n))
      terms.push_back({r * n + e.col, r * N + e.k, e.sign, e.axis});
  return apply_first_order(W, FieldKind::Matrix, m, n, terms, b);
}

Field laplacian(const Field& f, Backend b) {
  const Grid& g = f.grid();
  if (b == Backend::Central2) {
    central2_check(g);
    Field out(g, f.kind(), f.rows(), f.cols());
    const auto& shape = g.shape();
    for (int c = 0; c < f.components(); ++c) {
      const double* src = f.component_flat(c);
      double* dst = out.component_flat(c);
      for (int axis = 0; axis < g.n(); ++axis) {
        std::size_t stride = 1;
        for (int d = g.n() - 1; d > axis; --d) stride *= static_cast<std::size_t>(shape[d]);
        const std::size_t m = static_cast<std::size_t>(shape[axis]);
        const double w = 1.0 / (g.spacing(axis) * g.spacing(axis));
        for (std::size_t s = 0, v = g.volume(); s < v; ++s) {
          const std::size_t i = (s / stride) % m;
          const std::size_t up = (i + 1 == m) ? s + stride - m * stride : s + stride;
          const std::size_t dn = (i == 0) ? s + (m - 1) * stride : s - stride;
          dst[s] += w * (src[up] - 2.0 * src[s] + src[dn]);
        }
      }
    }
    return out;
  }
  SpectralPlan& plan = plan_for(g);
  const std::size_t S = plan.spec_size();
  Field out(g, f.kind(), f.rows(), f.cols());
  // Even-order multiplier -|k|^2 with the Nyquist column kept at +M/2.
  std::vector<double> mult(S, 0.0);
  for (int d = 0; d < g.n(); ++d) {
    const auto& kax = plan.axis_wavenumbers(d, /*derivative_mode=*/false);
    for (std::size_t s = 0; s < S; ++s) mult[s] -= kax[s] * kax[s];
  }
  for (int c = 0; c < f.components(); ++c) {
    auto spec = plan.forward(f.component_flat(c));
    for (std::size_t s = 0; s < S; ++s) spec[s] *= mult[s];
    plan.backward(spec.data(), out.component_flat(c));
  }
  return out;
}

Field inverse_laplacian(const Field& f) {
  const Grid& g = f.grid();
  SpectralPlan& plan = plan_for(g);
  const std::size_t S = plan.spec_size();
  Field out(g, f.kind(), f.rows(), f.cols());
  const double mean_tol = 1e-10 * std::max(1.0, linf_norm(f));
  for (int c = 0; c < f.components(); ++c) {
    if (std::abs(component_mean(f, c)) > mean_tol)
      throw PreconditionError("inverse_laplacian: input component " + std::to_string(c) +
                              " has nonzero mean");
    auto spec = plan.forward(f.component_flat(c));
    for (std::size_t s = 0; s < S; ++s) {
      double k2 = 0.0;
      for (int d = 0; d < g.n(); ++d) {
        const double kd = plan.axis_wavenumbers(d, false)[s];
        k2 += kd * kd;
      }
      spec[s] = (k2 == 0.0) ? std::complex<double>(0.0, 0.0) : spec[s] / (-k2);
    }
    plan.backward(spec.data(), out.component_flat(c));
  }
  return out;
}

Field inc_n(const Field& P, Backend b) {
  const int n = P.grid().n();
  if (P.rows() != n || P.cols() != n) throw DomainError("inc_n: n x n matrix field required");
  // -[[d]] P [[d]]^T assembled as two row-wise curls with a transpose between:
  // [[d]] B = (B^T [[d]]^T)^T since the entries are plain partial derivatives.
  Field B = matrix_curl(P, b);               // P [[d]]^T, n x N
  Field Z = matrix_curl(B.transposed(), b);  // B^T [[d]]^T, N x N
  return -1.0 * Z.transposed();
}

Field inc_sandwich_scalar(const Field& zeta, Backend b) {
  require_scalar(zeta, "inc_sandwich_scalar");
  const Grid& g = zeta.grid();
  const int N = cross_dim(g.n());
  Field Q = Field::matrix(g, N, N);
  const std::size_t v = g.volume();
  for (int d = 0; d < N; ++d) {
    double* dst = Q.component(d, d);
    const double* src = zeta.data();
    for (std::size_t s = 0; s < v; ++s) dst[s] = src[s];
  }
  Field W = matrix_adjoint(Q, b);                    // (zeta Id) [[d]], N x n
  return matrix_adjoint(W.transposed(), b).transposed();  // [[d]]^T W, n x n
}

Field skew_field_from_cross(const Field& g) {
  require_cross(g, "skew_field_from_cross");
  const Grid& gr = g.grid();
  const int n = gr.n();
  Field A = Field::matrix(gr, n, n);
  const std::size_t v = gr.volume();
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      const double* src = g.component_flat(k);
      double* up = A.component(i, j);
      double* lo = A.component(j, i);
      for (std::size_t s = 0; s < v; ++s) {
        up[s] = src[s];
        lo[s] = -src[s];
      }
    }
  return A;
}

Field cross_field_from_skew(const Field& A, double tol) {
  const int n = A.grid().n();
  if (A.rows() != n || A.cols() != n)
    throw DomainError("cross_field_from_skew: n x n matrix field required");
  const double scale = std::max(1.0, linf_norm(A));
  Field g = Field::cross_kind(A.grid());
  const std::size_t v = A.grid().volume();
  for (int d = 0; d < n; ++d) {
    const double* diag = A.component(d, d);
    for (std::size_t s = 0; s < v; ++s)
      if (std::abs(diag[s]) > tol * scale)
        throw DomainError("cross_field_from_skew: nonzero diagonal");
  }
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      const double* up = A.component(i, j);
      const double* lo = A.component(j, i);
      double* dst = g.component_flat(k);
      for (std::size_t s = 0; s < v; ++s) {
        if (std::abs(up[s] + lo[s]) > tol * scale)
          throw DomainError("cross_field_from_skew: field is not skew-symmetric");
        dst[s] = up[s];
      }
    }
  return g;
}

Field classic_curl_rows(const Field& P, Backend b) {
  const Grid& g = P.grid();
  if (g.n() != 3) throw DomainError("classic_curl_rows: three-dimensional grids only");
  const bool is_vec = (P.kind() == FieldKind::Vector);
  if (!is_vec) require_matrix_cols(P, 3, "classic_curl_rows");
  const int m = is_vec ? 1 : P.rows();
  // (curl v)_1 = d2 v3 - d3 v2 and cyclic.
  static const int spec[3][2][3] = {
      // out, {sign terms}: {axis, comp, sign encoded by order}
      {{1, 2, +1}, {2, 1, -1}},
      {{2, 0, +1}, {0, 2, -1}},
      {{0, 1, +1}, {1, 0, -1}},
  };
  std::vector<Term> terms;
  for (int r = 0; r < m; ++r)
    for (int o = 0; o < 3; ++o)
      for (int t = 0; t < 2; ++t)
        terms.push_back({r * 3 + o, r * 3 + spec[o][t][1], static_cast<double>(spec[o][t][2]),
                         spec[o][t][0]});
  if (is_vec) return apply_first_order(P, FieldKind::Vector, 3, 1, terms, b);
  return apply_first_order(P, FieldKind::Matrix, m, 3, terms, b);
}

Field nye_anti(const Field& a) {
  require_vector(a, "nye_anti");
  const Grid& g = a.grid();
  if (g.n() != 3) throw DomainError("nye_anti: three-dimensional fields only");
  Field A = Field::matrix(g, 3, 3);
  const std::size_t v = g.volume();
  const double* a1 = a.component_flat(0);
  const double* a2 = a.component_flat(1);
  const double* a3 = a.component_flat(2);
  for (std::size_t s = 0; s < v; ++s) {
    A.component(0, 1)[s] = -a3[s];
    A.component(0, 2)[s] = a2[s];
    A.component(1, 0)[s] = a3[s];
    A.component(1, 2)[s] = -a1[s];
    A.component(2, 0)[s] = -a2[s];
    A.component(2, 1)[s] = a1[s];
  }
  return A;
}

Field nye_vee(const Field& A, double tol) {
  const Grid& g = A.grid();
  if (g.n() != 3 || A.rows() != 3 || A.cols() != 3)
    throw DomainError("nye_vee: 3 x 3 matrix field on a 3d grid required");
  const double scale = std::max(1.0, linf_norm(A));
  Field a = Field::vector(g);
  const std::size_t v = g.volume();
  for (std::size_t s = 0; s < v; ++s) {
    for (int d = 0; d < 3; ++d)
      if (std::abs(A.component(d, d)[s]) > tol * scale)
        throw DomainError("nye_vee: nonzero diagonal");
    if (std::abs(A.component(0, 1)[s] + A.component(1, 0)[s]) > tol * scale ||
        std::abs(A.component(0, 2)[s] + A.component(2, 0)[s]) > tol * scale ||
        std::abs(A.component(1, 2)[s] + A.component(2, 1)[s]) > tol * scale)
      throw DomainError("nye_vee: field is not skew-symmetric");
    a.component_flat(0)[s] = A.component(2, 1)[s];
    a.component_flat(1)[s] = A.component(0, 2)[s];
    a.component_flat(2)[s] = A.component(1, 0)[s];
  }
  return a;
}

Field nye_curl_of_skew(const Field& a, Backend b) {
  return classic_curl_rows(nye_anti(a), b);
}

Field nye_recover_derivative(const Field& F) {
  const Grid& g = F.grid();
  if (g.n() != 3 || F.rows() != 3 || F.cols() != 3)
    throw DomainError("nye_recover_derivative: 3 x 3 matrix field required");
  Field out = Field::matrix(g, 3, 3);
  const std::size_t v = g.volume();
  for (std::size_t s = 0; s < v; ++s) {
    const double tr =
        F.component(0, 0)[s] + F.component(1, 1)[s] + F.component(2, 2)[s];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        out.component(r, c)[s] = (r == c ? 0.5 * tr : 0.0) - F.component(c, r)[s];
  }
  return out;
}

LaplacianSplit vector_laplacian_split(const Field& a, Backend b) {
  require_vector(a, "vector_laplacian_split");
  LaplacianSplit out{grad(divergence(a, b), b), adjoint_curl(curl_n(a, b), b), 0.0};
  Field lap = laplacian(a, b);
  out.residual = max_abs_diff(lap, out.grad_div + out.adjoint_curl_part);
  return out;
}

MatrixLaplacianSplit matrix_laplacian_split(const Field& P, Backend b) {
  const int n = P.grid().n();
  require_matrix_cols(P, n, "matrix_laplacian_split");
  Field div_part = matrix_divergence(P, b);
  MatrixLaplacianSplit out{derivative(div_part, b), matrix_adjoint(matrix_curl(P, b), b), 0.0};
  Field lap = laplacian(P, b);
  out.residual = max_abs_diff(lap, out.derivative_div + out.curl_adjoint_part);
  return out;
}

double parts_residual_vector(const Field& a, const Field& g, Backend b) {
  require_vector(a, "parts_residual_vector");
  require_cross(g, "parts_residual_vector");
  const double t1 = l2_inner(curl_n(a, b), g);
  const double t2 = l2_inner(a, adjoint_curl(g, b));
  return std::abs(t1 + t2) / std::max({1.0, std::abs(t1), std::abs(t2)});
}

double parts_residual_matrix(const Field& P, const Field& Q, Backend b) {
  const double t1 = l2_inner(matrix_curl(P, b), Q);
  const double t2 = l2_inner(P, matrix_adjoint(Q, b));
  return std::abs(t1 + t2) / std::max({1.0, std::abs(t1), std::abs(t2)});
}

double curl_adjoint_curl_residual(const Field& a, Backend b) {
  Field c = curl_n(a, b);
  return max_abs_diff(curl_n(adjoint_curl(c, b), b), laplacian(c, b));
}

Mat symbol(FirstOrderOp op, const Vec& b) {
  if (b.size() < 2) throw DomainError("symbol: frequency dimension must be >= 2");
  if (b.norm() == 0.0) throw DomainError("symbol: zero frequency");
  switch (op) {
    case FirstOrderOp::Grad:
      return Mat(b);
    case FirstOrderOp::Div:
      return Mat(b.transpose());
    case FirstOrderOp::CurlN:
      return cross_matrix(b);
    case FirstOrderOp::AdjointCurl:
      return cross_matrix(b).transpose();
  }
  throw DomainError("symbol: unknown operator");
}

EllipticityReport ellipticity_report(FirstOrderOp op, int n, int trials, std::uint64_t seed) {
  if (n < 2) throw DomainError("ellipticity_report: n must be >= 2");
  if (trials < 1) throw DomainError("ellipticity_report: trials must be >= 1");
  Rng rng(seed);
  EllipticityReport rep;
  rep.min_sigma = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Vec b = rng.normal_vector(n);
    while (b.norm() < 1e-8) b = rng.normal_vector(n);
    b /= b.norm();
    Mat S = symbol(op, b);
    // Injectivity constant over the domain: sqrt of the smallest eigenvalue
    // of S^T S.  A wide symbol (cols > rows) always has one of zero.
    Eigen::SelfAdjointEigenSolver<Mat> es(S.transpose() * S);
    const double lam = std::max(0.0, es.eigenvalues()[0]);
    const double sigma = std::sqrt(lam);
    if (sigma < rep.min_sigma) {
      rep.min_sigma = sigma;
      rep.witness_b = b;
      rep.witness = es.eigenvectors().col(0);
      rep.witness_residual = (S * rep.witness).norm();
    }
  }
  rep.elliptic = rep.min_sigma > 1e-8;
  return rep;
}

double nye_determinacy_mode_residual(int n, const std::vector<int>& kvec) {
  const int N = cross_dim(n);
  Vec k(n);
  for (int d = 0; d < n; ++d) k[d] = static_cast<double>(kvec[d]);
  if (k.norm() == 0.0) throw DomainError("nye_determinacy_mode_residual: zero mode");
  Mat K = cross_matrix(k);  // N x n
  // Columns m: vec of the mode-wise images of the skew basis element E_m.
  Mat X(n * N, N);  // vec(E_m [[k]]^T)
  Mat Y(N * n, N);  // vec(e_m (x) k)
  for (int m = 0; m < N; ++m) {
    Vec em = Vec::Zero(N);
    em[m] = 1.0;
    Mat Em = SkewMatrix::from_vector(em).dense();
    Mat Xm = Em * K.transpose();            // n x N
    Mat Ym = em * k.transpose();            // N x n
    X.col(m) = Eigen::Map<Vec>(Xm.data(), Xm.size());
    Y.col(m) = Eigen::Map<Vec>(Ym.data(), Ym.size());
  }
  // The mode map exists iff every coefficient relation killed by X is also
  // killed by Y; equivalently Y (I - X^+ X) = 0.
  Eigen::JacobiSVD<Mat> svd(X, Eigen::ComputeThinV);
  const double smax = svd.singularValues()[0];
  Mat V = svd.matrixV();
  Mat proj = Mat::Zero(N, N);
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-12 * smax) proj += V.col(i) * V.col(i).transpose();
  const double resid = (Y * (Mat::Identity(N, N) - proj)).norm();
  return resid / std::max(1e-300, Y.norm());
}

double nye_determinacy_max_residual(int n, const std::vector<int>& shape) {
  if (static_cast<int>(shape.size()) != n)
    throw DomainError("nye_determinacy_max_residual: shape length mismatch");
  Grid grid(n, shape);
  // Full integer spectrum of the grid, k_d in (-M/2, M/2], excluding k = 0.
  std::vector<int> k(n);
  std::function<double(int)> walk = [&](int d) -> double {
    if (d == n) {
      for (int kd : k)
        if (kd != 0) return nye_determinacy_mode_residual(n, k);
      return 0.0;
    }
    double worst = 0.0;
    for (int j = 0; j < shape[d]; ++j) {
      k[d] = (j <= shape[d] / 2) ? j : j - shape[d];
      worst = std::max(worst, walk(d + 1));
    }
    return worst;
  };
  return walk(0);
}

}  // namespace crossn
