#include "crossn.h"

#include <cstring>
#include <string>

#include "core/algebra.hpp"
#include "core/calculus.hpp"
#include "core/divcurl.hpp"
#include "core/errors.hpp"
#include "core/fieldio.hpp"
#include "core/grid.hpp"
#include "core/helmholtz.hpp"
#include "core/suites.hpp"
#include "core/synth.hpp"

using namespace crossn;

struct crossn_grid {
  Grid g;
};
struct crossn_field {
  Field f;
};

namespace {

thread_local std::string t_last_error;

crossn_status fail(crossn_status s, const char* what) {
  t_last_error = what;
  return s;
}

// Runs fn, translating the core error taxonomy onto status codes.
template <class Fn>
crossn_status wrap(Fn&& fn) {
  try {
    fn();
    return CROSSN_OK;
  } catch (const ParseError& e) {
    return fail(CROSSN_ERR_PARSE, e.what());
  } catch (const IOError& e) {
    return fail(CROSSN_ERR_IO, e.what());
  } catch (const PreconditionError& e) {
    return fail(CROSSN_ERR_PRECONDITION, e.what());
  } catch (const ConfigError& e) {
    return fail(CROSSN_ERR_CONFIG, e.what());
  } catch (const DomainError& e) {
    return fail(CROSSN_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CROSSN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CROSSN_ERR_INTERNAL, e.what());
  }
}

bool null_args() { return false; }
template <class... Rest>
bool null_args(const void* p, Rest... rest) {
  return p == nullptr || null_args(rest...);
}

#define REQUIRE_NONNULL(...)                                        \
  do {                                                              \
    if (null_args(__VA_ARGS__))                                     \
      return fail(CROSSN_ERR_NULL, "required argument is NULL");    \
  } while (0)

Vec to_vec(const double* p, int n) { return Eigen::Map<const Vec>(p, n); }

Mat to_mat(const double* p, int rows, int cols) {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(p, rows, cols);
}

void store(const Vec& v, double* out) { Eigen::Map<Vec>(out, v.size()) = v; }

void store(const Mat& m, double* out) {
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      out, m.rows(), m.cols()) = m;
}

Backend to_backend(crossn_backend b) {
  switch (b) {
    case CROSSN_BACKEND_SPECTRAL: return Backend::Spectral;
    case CROSSN_BACKEND_CENTRAL2: return Backend::Central2;
  }
  throw ConfigError("unknown backend");
}

FieldKind to_kind(crossn_field_kind k) {
  switch (k) {
    case CROSSN_FIELD_SCALAR: return FieldKind::Scalar;
    case CROSSN_FIELD_VECTOR: return FieldKind::Vector;
    case CROSSN_FIELD_CROSS: return FieldKind::Cross;
    case CROSSN_FIELD_MATRIX: return FieldKind::Matrix;
  }
  throw DomainError("unknown field kind");
}

crossn_field_kind from_kind(FieldKind k) {
  switch (k) {
    case FieldKind::Scalar: return CROSSN_FIELD_SCALAR;
    case FieldKind::Vector: return CROSSN_FIELD_VECTOR;
    case FieldKind::Cross: return CROSSN_FIELD_CROSS;
    case FieldKind::Matrix: return CROSSN_FIELD_MATRIX;
  }
  return CROSSN_FIELD_SCALAR;
}

FirstOrderOp to_op(crossn_operator op) {
  switch (op) {
    case CROSSN_OP_GRAD: return FirstOrderOp::Grad;
    case CROSSN_OP_DIV: return FirstOrderOp::Div;
    case CROSSN_OP_CURL: return FirstOrderOp::CurlN;
    case CROSSN_OP_ADJOINT_CURL: return FirstOrderOp::AdjointCurl;
  }
  throw DomainError("unknown operator");
}

crossn_status make_field(Field&& f, crossn_field** out) {
  *out = new crossn_field{std::move(f)};
  return CROSSN_OK;
}

// Unary field -> field operator plumbing.
template <class Fn>
crossn_status field_op(const crossn_field* in, crossn_field** out, Fn&& fn) {
  if (in == nullptr || out == nullptr)
    return fail(CROSSN_ERR_NULL, "required argument is NULL");
  return wrap([&] { make_field(fn(in->f), out); });
}

}  // namespace

const char* crossn_version(void) { return "1.0.0"; }

const char* crossn_last_error(void) { return t_last_error.c_str(); }

/* ------------------------------------------------------------------ */

crossn_status crossn_cross_dim(int n, int* N) {
  REQUIRE_NONNULL(N);
  return wrap([&] { *N = cross_dim(n); });
}

crossn_status crossn_pair_index(int n, int i, int j, int* k) {
  REQUIRE_NONNULL(k);
  return wrap([&] { *k = pair_index(n, i, j); });
}

crossn_status crossn_index_pair(int n, int k, int* i, int* j) {
  REQUIRE_NONNULL(i, j);
  return wrap([&] {
    auto [pi, pj] = index_pair(n, k);
    *i = pi;
    *j = pj;
  });
}

crossn_status crossn_cross(int n, const double* a, const double* b, double* out) {
  REQUIRE_NONNULL(a, b, out);
  return wrap([&] { store(cross(to_vec(a, n), to_vec(b, n)), out); });
}

crossn_status crossn_cross_matrix(int n, const double* a, double* out) {
  REQUIRE_NONNULL(a, out);
  return wrap([&] { store(cross_matrix(to_vec(a, n)), out); });
}

crossn_status crossn_skew_from_vec(int n, const double* v, double* A) {
  REQUIRE_NONNULL(v, A);
  return wrap([&] {
    store(SkewMatrix(n, to_vec(v, cross_dim(n))).dense(), A);
  });
}

crossn_status crossn_vec_from_skew(int n, const double* A, double* v) {
  REQUIRE_NONNULL(A, v);
  return wrap([&] { store(SkewMatrix::from_dense(to_mat(A, n, n)).to_vector(), v); });
}

crossn_status crossn_grassmann_triple(int n, const double* a, const double* g, double* out) {
  REQUIRE_NONNULL(a, g, out);
  return wrap([&] { store(grassmann_triple(to_vec(a, n), to_vec(g, cross_dim(n))), out); });
}

crossn_status crossn_room_product(int n, const double* a, const double* b, double* out) {
  REQUIRE_NONNULL(a, b, out);
  return wrap([&] { store(room_product(to_vec(a, n), to_vec(b, n)), out); });
}

crossn_status crossn_dyad_from_room(int n, const double* a, const double* b, double* out) {
  REQUIRE_NONNULL(a, b, out);
  return wrap([&] { store(dyad_from_room(to_vec(a, n), to_vec(b, n)), out); });
}

crossn_status crossn_cross_right(int n, int rows, const double* P, const double* b,
                                 double* out) {
  REQUIRE_NONNULL(P, b, out);
  return wrap([&] { store(cross_right(to_mat(P, rows, n), to_vec(b, n)), out); });
}

crossn_status crossn_cross_left(int n, int cols, const double* b, const double* B,
                                double* out) {
  REQUIRE_NONNULL(b, B, out);
  return wrap([&] { store(cross_left(to_vec(b, n), to_mat(B, n, cols)), out); });
}

crossn_status crossn_simultaneous_cross(int n, const double* b, const double* P, double* out) {
  REQUIRE_NONNULL(b, P, out);
  return wrap([&] { store(simultaneous_cross(to_vec(b, n), to_mat(P, n, n)), out); });
}

crossn_status crossn_sandwich(int n, const double* b, const double* Q, double* out) {
  REQUIRE_NONNULL(b, Q, out);
  return wrap([&] {
    const int N = cross_dim(n);
    store(sandwich(to_vec(b, n), to_mat(Q, N, N)), out);
  });
}

crossn_status crossn_symbol(int n, crossn_operator op, const double* b, double* out,
                            int* rows, int* cols) {
  REQUIRE_NONNULL(b, rows, cols);
  return wrap([&] {
    Mat S = symbol(to_op(op), to_vec(b, n));
    *rows = static_cast<int>(S.rows());
    *cols = static_cast<int>(S.cols());
    if (out != nullptr) store(S, out);
  });
}

crossn_status crossn_ellipticity(crossn_operator op, int n, int trials, uint64_t seed,
                                 double* min_sigma, int* elliptic, double* witness_b,
                                 double* witness) {
  REQUIRE_NONNULL(min_sigma, elliptic);
  return wrap([&] {
    EllipticityReport rep = ellipticity_report(to_op(op), n, trials, seed);
    *min_sigma = rep.min_sigma;
    *elliptic = rep.elliptic ? 1 : 0;
    if (witness_b != nullptr) store(rep.witness_b, witness_b);
    if (witness != nullptr) store(rep.witness, witness);
  });
}

/* ------------------------------------------------------------------ */

namespace {
const std::vector<NamedValue>& identity_names() {
  static const std::vector<NamedValue> names = identity_suite(2, 1, 0);
  return names;
}
const std::vector<NamedValue>& kernel_names() {
  static const std::vector<NamedValue> names =
      kernel_suite(2, {8, 8}, Backend::Spectral, 2, 0);
  return names;
}
}  // namespace

int crossn_identity_count(void) { return static_cast<int>(identity_names().size()); }

const char* crossn_identity_name(int idx) {
  const auto& names = identity_names();
  if (idx < 0 || idx >= static_cast<int>(names.size())) return nullptr;
  return names[idx].name.c_str();
}

crossn_status crossn_identities_run(int n, int trials, uint64_t seed, double* residuals) {
  REQUIRE_NONNULL(residuals);
  return wrap([&] {
    auto res = identity_suite(n, trials, seed);
    for (std::size_t i = 0; i < res.size(); ++i) residuals[i] = res[i].value;
  });
}

crossn_status crossn_oracle_run(int n, int trials, uint64_t seed, double* residual) {
  REQUIRE_NONNULL(residual);
  return wrap([&] { *residual = oracle_suite(n, trials, seed); });
}

/* ------------------------------------------------------------------ */

crossn_status crossn_grid_create(int n, const int* shape, crossn_grid** out) {
  REQUIRE_NONNULL(shape, out);
  return wrap([&] {
    *out = new crossn_grid{Grid(n, std::vector<int>(shape, shape + n))};
  });
}

void crossn_grid_destroy(crossn_grid* g) { delete g; }

crossn_status crossn_field_create(const crossn_grid* g, crossn_field_kind kind, int rows,
                                  int cols, crossn_field** out) {
  REQUIRE_NONNULL(g, out);
  return wrap([&] { make_field(Field(g->g, to_kind(kind), rows, cols), out); });
}

void crossn_field_destroy(crossn_field* f) { delete f; }

crossn_status crossn_field_clone(const crossn_field* f, crossn_field** out) {
  return field_op(f, out, [](const Field& x) { return x; });
}

crossn_status crossn_field_info(const crossn_field* f, int* n, int* shape,
                                crossn_field_kind* kind, int* rows, int* cols) {
  REQUIRE_NONNULL(f);
  return wrap([&] {
    if (n != nullptr) *n = f->f.grid().n();
    if (shape != nullptr)
      std::memcpy(shape, f->f.grid().shape().data(), sizeof(int) * f->f.grid().shape().size());
    if (kind != nullptr) *kind = from_kind(f->f.kind());
    if (rows != nullptr) *rows = f->f.rows();
    if (cols != nullptr) *cols = f->f.cols();
  });
}

double* crossn_field_data(crossn_field* f) { return f == nullptr ? nullptr : f->f.data(); }

const double* crossn_field_data_const(const crossn_field* f) {
  return f == nullptr ? nullptr : f->f.data();
}

size_t crossn_field_len(const crossn_field* f) { return f == nullptr ? 0 : f->f.size(); }

crossn_status crossn_field_random(const crossn_grid* g, crossn_field_kind kind, int rows,
                                  int cols, int band, uint64_t seed, crossn_field** out) {
  REQUIRE_NONNULL(g, out);
  return wrap([&] {
    Field f = band > 0 ? random_band_limited(g->g, to_kind(kind), rows, cols, band, seed)
                       : random_band_limited(g->g, to_kind(kind), rows, cols, seed);
    make_field(std::move(f), out);
  });
}

double crossn_field_linf(const crossn_field* f) { return f == nullptr ? 0.0 : linf_norm(f->f); }

double crossn_field_l2(const crossn_field* f) { return f == nullptr ? 0.0 : l2_norm(f->f); }

crossn_status crossn_field_axpy(double alpha, const crossn_field* x, crossn_field* y) {
  REQUIRE_NONNULL(x, y);
  return wrap([&] {
    require_same_layout(x->f, y->f, "crossn_field_axpy");
    double* py = y->f.data();
    const double* px = x->f.data();
    for (std::size_t i = 0, e = y->f.size(); i < e; ++i) py[i] += alpha * px[i];
  });
}

crossn_status crossn_field_max_abs_diff(const crossn_field* a, const crossn_field* b,
                                        double* out) {
  REQUIRE_NONNULL(a, b, out);
  return wrap([&] { *out = max_abs_diff(a->f, b->f); });
}

crossn_status crossn_field_dot(const crossn_field* a, const crossn_field* b,
                               crossn_field** out) {
  REQUIRE_NONNULL(a, b, out);
  return wrap([&] {
    require_same_layout(a->f, b->f, "crossn_field_dot");
    Field dot = Field::scalar(a->f.grid());
    const std::size_t v = a->f.grid().volume();
    double* d = dot.data();
    for (int c = 0; c < a->f.components(); ++c) {
      const double* pa = a->f.component_flat(c);
      const double* pb = b->f.component_flat(c);
      for (std::size_t s = 0; s < v; ++s) d[s] += pa[s] * pb[s];
    }
    make_field(std::move(dot), out);
  });
}

crossn_status crossn_field_write(const crossn_field* f, const char* path) {
  REQUIRE_NONNULL(f, path);
  return wrap([&] { write_field(f->f, path); });
}

crossn_status crossn_field_read(const char* path, crossn_field** out) {
  REQUIRE_NONNULL(path, out);
  return wrap([&] { make_field(read_field(path), out); });
}

/* ------------------------------------------------------------------ */

crossn_status crossn_grad(const crossn_field* f, crossn_backend b, crossn_field** out) {
  return field_op(f, out, [&](const Field& x) { return grad(x, to_backend(b)); });
}

crossn_status crossn_div(const crossn_field* f, crossn_backend b, crossn_field** out) {
  return field_op(f, out, [&](const Field& x) { return divergence(x, to_backend(b)); });
}

crossn_status crossn_curl(const crossn_field* f, crossn_backend b, crossn_field** out) {
  return field_op(f, out, [&](const Field& x) { return curl_n(x, to_backend(b)); });
}

crossn_status crossn_adjoint_curl(const crossn_field* f, crossn_backend b,
                                  crossn_field** out) {
  return field_op(f, out, [&](const Field& x) { return adjoint_curl(x, to_backend(b)); });
}

crossn_status crossn_derivative(const crossn_field* f, crossn_backend b, crossn_field** out) {
  return field_op(f, out, [&](const Field& x) { return derivative(x, to_backend(b)); });
}

crossn_status crossn_matrix_div(const crossn_field* f, crossn_backend b, crossn_field** out) {
  return field_op(f, out, [&](const Field& x) { return matrix_divergence(x, to_backend(b)); });
}

crossn_status crossn_matrix_curl(const crossn_field* f, crossn_backend b, crossn_field** out) {
  return field_op(f, out, [&](const Field& x) { return matrix_curl(x, to_backend(b)); });
}

crossn_status crossn_matrix_adjoint(const crossn_field* f, crossn_backend b,
                                    crossn_field** out) {
  return field_op(f, out, [&](const Field& x) { return matrix_adjoint(x, to_backend(b)); });
}

crossn_status crossn_laplacian(const crossn_field* f, crossn_backend b, crossn_field** out) {
  return field_op(f, out, [&](const Field& x) { return laplacian(x, to_backend(b)); });
}

crossn_status crossn_inverse_laplacian(const crossn_field* f, crossn_field** out) {
  return field_op(f, out, [](const Field& x) { return inverse_laplacian(x); });
}

crossn_status crossn_inc(const crossn_field* f, crossn_backend b, crossn_field** out) {
  return field_op(f, out, [&](const Field& x) { return inc_n(x, to_backend(b)); });
}

crossn_status crossn_inc_sandwich_scalar(const crossn_field* f, crossn_backend b,
                                         crossn_field** out) {
  return field_op(f, out, [&](const Field& x) { return inc_sandwich_scalar(x, to_backend(b)); });
}

crossn_status crossn_nye_curl_of_skew(const crossn_field* a, crossn_backend b,
                                      crossn_field** out) {
  return field_op(a, out, [&](const Field& x) { return nye_curl_of_skew(x, to_backend(b)); });
}

crossn_status crossn_nye_recover_derivative(const crossn_field* F, crossn_field** out) {
  return field_op(F, out, [](const Field& x) { return nye_recover_derivative(x); });
}

crossn_status crossn_nye_determinacy(int n, const int* shape, double* max_residual) {
  REQUIRE_NONNULL(shape, max_residual);
  return wrap([&] {
    *max_residual = nye_determinacy_max_residual(n, std::vector<int>(shape, shape + n));
  });
}

/* ------------------------------------------------------------------ */

int crossn_kernel_check_count(void) { return static_cast<int>(kernel_names().size()); }

const char* crossn_kernel_check_name(int idx) {
  const auto& names = kernel_names();
  if (idx < 0 || idx >= static_cast<int>(names.size())) return nullptr;
  return names[idx].name.c_str();
}

int crossn_kernel_check_exact(int idx) {
  const auto& names = kernel_names();
  if (idx < 0 || idx >= static_cast<int>(names.size())) return 0;
  return kernel_check_is_exact(names[idx].name) ? 1 : 0;
}

crossn_status crossn_kernel_checks_run(int n, const int* shape, crossn_backend b, int band,
                                       uint64_t seed, double* residuals) {
  REQUIRE_NONNULL(shape, residuals);
  return wrap([&] {
    auto res = kernel_suite(n, std::vector<int>(shape, shape + n), to_backend(b), band, seed);
    for (std::size_t i = 0; i < res.size(); ++i) residuals[i] = res[i].value;
  });
}

crossn_status crossn_laplacian_refinement_ratio(int n, const int* shape, int band,
                                                uint64_t seed, double* ratio) {
  REQUIRE_NONNULL(shape, ratio);
  return wrap([&] {
    *ratio = laplacian_refinement_ratio(n, std::vector<int>(shape, shape + n), band, seed);
  });
}

/* ------------------------------------------------------------------ */

namespace {
crossn_status helmholtz_out(const HelmholtzResult& r, crossn_field** curlfree,
                            crossn_field** divfree, double* diagnostics, double* mean_mode) {
  if (curlfree != nullptr) make_field(Field(r.curlfree), curlfree);
  if (divfree != nullptr) make_field(Field(r.divfree), divfree);
  if (diagnostics != nullptr) {
    diagnostics[0] = r.sum_residual_linf;
    diagnostics[1] = r.div_of_divfree_linf;
    diagnostics[2] = r.curl_of_curlfree_linf;
  }
  if (mean_mode != nullptr)
    std::memcpy(mean_mode, r.mean_mode.data(), sizeof(double) * r.mean_mode.size());
  return CROSSN_OK;
}
}  // namespace

crossn_status crossn_helmholtz_spectral(const crossn_field* a, crossn_field** curlfree,
                                        crossn_field** divfree, double* diagnostics,
                                        double* mean_mode) {
  REQUIRE_NONNULL(a);
  return wrap([&] {
    helmholtz_out(spectral_decompose(a->f), curlfree, divfree, diagnostics, mean_mode);
  });
}

crossn_status crossn_helmholtz_riesz(const crossn_field* a, double support_tol,
                                     crossn_field** curlfree, crossn_field** divfree,
                                     double* diagnostics, double* mean_mode) {
  REQUIRE_NONNULL(a);
  return wrap([&] {
    helmholtz_out(riesz_decompose(a->f, support_tol), curlfree, divfree, diagnostics,
                  mean_mode);
  });
}

crossn_status crossn_green_gradient(int n, const double* x, const double* y, double* out) {
  REQUIRE_NONNULL(x, y, out);
  return wrap([&] { store(green_gradient(n, to_vec(x, n), to_vec(y, n)), out); });
}

/* ------------------------------------------------------------------ */

crossn_status crossn_family_member(const crossn_field* base, int axis, int comp,
                                   double amplitude, int k, crossn_field** out) {
  REQUIRE_NONNULL(base, out);
  return wrap([&] {
    const int n = base->f.grid().n();
    if (axis < 1 || axis > n) throw DomainError("crossn_family_member: axis out of range");
    if (comp < 1 || comp > base->f.components())
      throw DomainError("crossn_family_member: component out of range");
    OscillatoryFamily fam{base->f, axis - 1, comp - 1, amplitude, {k}};
    if (k < 1 || k > base->f.grid().shape()[axis - 1] / 4)
      throw ConfigError("crossn_family_member: k not resolved by the grid");
    make_field(family_member(fam, k), out);
  });
}

crossn_status crossn_weak_pairing(const crossn_field* u, const crossn_field* v, int axis,
                                  int p, double amplitude, const int* ks, int nk,
                                  const crossn_field* phi, double* pairings,
                                  double* deviations, double* limit, double* exponent) {
  REQUIRE_NONNULL(u, v, ks, phi);
  return wrap([&] {
    if (nk < 1) throw DomainError("crossn_weak_pairing: need at least one k");
    auto [fu, fv] = build_families(u->f, v->f, axis, amplitude,
                                   std::vector<int>(ks, ks + nk), p);
    WeakPairingReport rep = weak_pairing(fu, fv, phi->f);
    for (int i = 0; i < nk; ++i) {
      if (pairings != nullptr) pairings[i] = rep.pairings[i];
      if (deviations != nullptr) deviations[i] = rep.deviations[i];
    }
    if (limit != nullptr) *limit = rep.limit;
    if (exponent != nullptr) *exponent = rep.exponent;
  });
}

crossn_status crossn_commutation_residuals(const crossn_field* f, double* div_residual,
                                           double* curl_residual) {
  REQUIRE_NONNULL(f, div_residual, curl_residual);
  return wrap([&] {
    auto [rd, rc] = commutation_residuals(f->f);
    *div_residual = rd;
    *curl_residual = rc;
  });
}

crossn_status crossn_potential_reconstruction(const crossn_field* u, double* residual) {
  REQUIRE_NONNULL(u, residual);
  return wrap([&] { *residual = potential_reconstruction_residual(u->f); });
}

crossn_status crossn_divcurl_demo_bases(const crossn_grid* g, crossn_field** u,
                                        crossn_field** v, crossn_field** phi) {
  REQUIRE_NONNULL(g, u, v, phi);
  return wrap([&] {
    DemoBases bases = divcurl_demo_bases(g->g);
    make_field(std::move(bases.u), u);
    make_field(std::move(bases.v), v);
    make_field(std::move(bases.phi), phi);
  });
}
