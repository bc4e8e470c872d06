/*
 * crossn -- generalized cross products in n dimensions and the vector
 * calculus they induce on periodic grids.
 *
 * The algebraic layer works on plain double arrays (row-major).  Sampled
 * fields live behind opaque handles created from a grid handle.  Every
 * function returns a crossn_status; on failure a thread-local message is
 * available from crossn_last_error().
 *
 * Index conventions: the pair (i, j), 1 <= i < j <= n, of a cross component
 * maps to the 1-based linear index k = (j-1)(j-2)/2 + i.  These two functions
 * are the only 1-based surface; array arguments are ordinary 0-based buffers.
 */
#ifndef CROSSN_H
#define CROSSN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crossn_status {
  CROSSN_OK = 0,
  CROSSN_ERR_DOMAIN = 1,        /* bad mathematical input (n, sizes, NaN) */
  CROSSN_ERR_CONFIG = 2,        /* unsupported configuration, budget, backend */
  CROSSN_ERR_PARSE = 3,         /* malformed field file */
  CROSSN_ERR_PRECONDITION = 4,  /* method precondition violated (support, mean) */
  CROSSN_ERR_IO = 5,            /* file system failure */
  CROSSN_ERR_NULL = 6,          /* required pointer was NULL */
  CROSSN_ERR_INTERNAL = 7
} crossn_status;

typedef enum crossn_backend {
  CROSSN_BACKEND_SPECTRAL = 0,
  CROSSN_BACKEND_CENTRAL2 = 1
} crossn_backend;

typedef enum crossn_field_kind {
  CROSSN_FIELD_SCALAR = 0,
  CROSSN_FIELD_VECTOR = 1,
  CROSSN_FIELD_CROSS = 2,
  CROSSN_FIELD_MATRIX = 3
} crossn_field_kind;

typedef enum crossn_operator {
  CROSSN_OP_GRAD = 0,
  CROSSN_OP_DIV = 1,
  CROSSN_OP_CURL = 2,
  CROSSN_OP_ADJOINT_CURL = 3
} crossn_operator;

const char* crossn_version(void);

/* Message describing the most recent failure on this thread. */
const char* crossn_last_error(void);

/* ------------------------------------------------------------------ */
/* Algebra on raw buffers                                              */
/* ------------------------------------------------------------------ */

/* N = n(n-1)/2; fails for n < 2. */
crossn_status crossn_cross_dim(int n, int* N);

/* 1-based pair (i, j) <-> 1-based linear index k. */
crossn_status crossn_pair_index(int n, int i, int j, int* k);
crossn_status crossn_index_pair(int n, int k, int* i, int* j);

/* out has length N. */
crossn_status crossn_cross(int n, const double* a, const double* b, double* out);

/* out is N x n row-major. */
crossn_status crossn_cross_matrix(int n, const double* a, double* out);

/* Strict upper triangle (pair order, length N) <-> dense skew matrix. */
crossn_status crossn_skew_from_vec(int n, const double* v, double* A);
crossn_status crossn_vec_from_skew(int n, const double* A, double* v);

/* [[a]]^T g for a cross vector g (length N); out has length n. */
crossn_status crossn_grassmann_triple(int n, const double* a, const double* g, double* out);

/* [[a]]^T [[b]], n x n row-major. */
crossn_status crossn_room_product(int n, const double* a, const double* b, double* out);

/* b (x) a recovered from the product above. */
crossn_status crossn_dyad_from_room(int n, const double* a, const double* b, double* out);

/* P x b = P [[-b]]^T; P is rows x n, out rows x N. */
crossn_status crossn_cross_right(int n, int rows, const double* P, const double* b, double* out);

/* b x B = [[b]] B; B is n x cols, out N x cols. */
crossn_status crossn_cross_left(int n, int cols, const double* b, const double* B, double* out);

/* [[b]] P [[-b]]^T for square P; out N x N. */
crossn_status crossn_simultaneous_cross(int n, const double* b, const double* P, double* out);

/* [[b]]^T Q [[b]] for Q of order N; out n x n. */
crossn_status crossn_sandwich(int n, const double* b, const double* Q, double* out);

/* Principal symbol of op at frequency b: rows/cols report the shape, out must
 * hold rows*cols doubles (row-major).  Query the shape with out = NULL. */
crossn_status crossn_symbol(int n, crossn_operator op, const double* b, double* out,
                            int* rows, int* cols);

/* Smallest singular value of the symbol over random unit frequencies, with a
 * kernel witness when it vanishes.  witness has domain length (n for grad/
 * adjoint-curl inputs... precisely: cols of the symbol), witness_b length n. */
crossn_status crossn_ellipticity(crossn_operator op, int n, int trials, uint64_t seed,
                                 double* min_sigma, int* elliptic, double* witness_b,
                                 double* witness);

/* ------------------------------------------------------------------ */
/* Randomized identity suites                                          */
/* ------------------------------------------------------------------ */

int crossn_identity_count(void);
const char* crossn_identity_name(int idx);

/* Max relative residual per identity (array of crossn_identity_count()). */
crossn_status crossn_identities_run(int n, int trials, uint64_t seed, double* residuals);

/* Max relative disagreement between the recursive product, the component
 * formula and the matrix application. */
crossn_status crossn_oracle_run(int n, int trials, uint64_t seed, double* residual);

/* ------------------------------------------------------------------ */
/* Grids and fields                                                    */
/* ------------------------------------------------------------------ */

typedef struct crossn_grid crossn_grid;
typedef struct crossn_field crossn_field;

crossn_status crossn_grid_create(int n, const int* shape, crossn_grid** out);
void crossn_grid_destroy(crossn_grid* g);

crossn_status crossn_field_create(const crossn_grid* g, crossn_field_kind kind, int rows,
                                  int cols, crossn_field** out);
void crossn_field_destroy(crossn_field* f);
crossn_status crossn_field_clone(const crossn_field* f, crossn_field** out);

/* Layout queries. */
crossn_status crossn_field_info(const crossn_field* f, int* n, int* shape /* n ints or NULL */,
                                crossn_field_kind* kind, int* rows, int* cols);

/* Contiguous component-major sample storage, rows*cols*volume doubles. */
double* crossn_field_data(crossn_field* f);
const double* crossn_field_data_const(const crossn_field* f);
size_t crossn_field_len(const crossn_field* f);

/* Mean-free band-limited random field with unit root-mean-square amplitude;
 * band 0 picks the default min(shape)/4. */
crossn_status crossn_field_random(const crossn_grid* g, crossn_field_kind kind, int rows,
                                  int cols, int band, uint64_t seed, crossn_field** out);

double crossn_field_linf(const crossn_field* f);
double crossn_field_l2(const crossn_field* f);
crossn_status crossn_field_axpy(double alpha, const crossn_field* x, crossn_field* y);
crossn_status crossn_field_max_abs_diff(const crossn_field* a, const crossn_field* b,
                                        double* out);
/* Pointwise component dot product of two equal-layout fields -> scalar field. */
crossn_status crossn_field_dot(const crossn_field* a, const crossn_field* b,
                               crossn_field** out);

/* Single-line text header + raw little-endian doubles; bit-exact round trip. */
crossn_status crossn_field_write(const crossn_field* f, const char* path);
crossn_status crossn_field_read(const char* path, crossn_field** out);

/* ------------------------------------------------------------------ */
/* Differential operators                                              */
/* ------------------------------------------------------------------ */

crossn_status crossn_grad(const crossn_field* f, crossn_backend b, crossn_field** out);
crossn_status crossn_div(const crossn_field* f, crossn_backend b, crossn_field** out);
crossn_status crossn_curl(const crossn_field* f, crossn_backend b, crossn_field** out);
crossn_status crossn_adjoint_curl(const crossn_field* f, crossn_backend b, crossn_field** out);
crossn_status crossn_derivative(const crossn_field* f, crossn_backend b, crossn_field** out);
crossn_status crossn_matrix_div(const crossn_field* f, crossn_backend b, crossn_field** out);
crossn_status crossn_matrix_curl(const crossn_field* f, crossn_backend b, crossn_field** out);
crossn_status crossn_matrix_adjoint(const crossn_field* f, crossn_backend b,
                                    crossn_field** out);
crossn_status crossn_laplacian(const crossn_field* f, crossn_backend b, crossn_field** out);
crossn_status crossn_inverse_laplacian(const crossn_field* f, crossn_field** out);
crossn_status crossn_inc(const crossn_field* f, crossn_backend b, crossn_field** out);
crossn_status crossn_inc_sandwich_scalar(const crossn_field* f, crossn_backend b,
                                         crossn_field** out);

/* Three-dimensional dislocation correspondence (classic curl conventions). */
crossn_status crossn_nye_curl_of_skew(const crossn_field* a, crossn_backend b,
                                      crossn_field** out);
crossn_status crossn_nye_recover_derivative(const crossn_field* F, crossn_field** out);

/* Mode-wise least-squares solvability of the derivative-from-curl relation
 * over every nonzero frequency of an n-dimensional grid. */
crossn_status crossn_nye_determinacy(int n, const int* shape, double* max_residual);

/* ------------------------------------------------------------------ */
/* Kernel/identity residual suite on random band-limited fields        */
/* ------------------------------------------------------------------ */

int crossn_kernel_check_count(void);
const char* crossn_kernel_check_name(int idx);
/* 1 when the check vanishes identically for both backends. */
int crossn_kernel_check_exact(int idx);
crossn_status crossn_kernel_checks_run(int n, const int* shape, crossn_backend b, int band,
                                       uint64_t seed, double* residuals);

/* residual(h) / residual(h/2) of the centered-difference Laplacian splitting. */
crossn_status crossn_laplacian_refinement_ratio(int n, const int* shape, int band,
                                                uint64_t seed, double* ratio);

/* ------------------------------------------------------------------ */
/* Helmholtz decomposition                                             */
/* ------------------------------------------------------------------ */

/* diagnostics[0] = |a - sum|_inf, [1] = |div divfree|_inf,
 * [2] = |curl curlfree|_inf; mean_mode has n entries.  Any output pointer may
 * be NULL when the value is not wanted. */
crossn_status crossn_helmholtz_spectral(const crossn_field* a, crossn_field** curlfree,
                                        crossn_field** divfree, double* diagnostics,
                                        double* mean_mode);

crossn_status crossn_helmholtz_riesz(const crossn_field* a, double support_tol,
                                     crossn_field** curlfree, crossn_field** divfree,
                                     double* diagnostics, double* mean_mode);

/* (x - y) / (n omega_n |x - y|^n); out has length n. */
crossn_status crossn_green_gradient(int n, const double* x, const double* y, double* out);

/* ------------------------------------------------------------------ */
/* Oscillatory families and weak pairings                              */
/* ------------------------------------------------------------------ */

/* base + amplitude sin(k x_axis) e_comp; axis and comp are 1-based. */
crossn_status crossn_family_member(const crossn_field* base, int axis, int comp,
                                   double amplitude, int k, crossn_field** out);

/* Pairings integral phi <u^k, v^k> dx for the div-preserving u-family
 * (component p != axis, p = 0 picks the default) and the curl-preserving
 * v-family.  Arrays pairings/deviations have nk entries. */
crossn_status crossn_weak_pairing(const crossn_field* u, const crossn_field* v, int axis,
                                  int p, double amplitude, const int* ks, int nk,
                                  const crossn_field* phi, double* pairings,
                                  double* deviations, double* limit, double* exponent);

/* |inv_lap(div f) - div(inv_lap f)|_inf and the curl analogue. */
crossn_status crossn_commutation_residuals(const crossn_field* f, double* div_residual,
                                           double* curl_residual);

/* |grad(div w) + [[d]]^T curl w - u|_inf for w = inv_lap u. */
crossn_status crossn_potential_reconstruction(const crossn_field* u, double* residual);

/* Deterministic demo bases (inverse-square sine spectrum, weight 1 + cos x1). */
crossn_status crossn_divcurl_demo_bases(const crossn_grid* g, crossn_field** u,
                                        crossn_field** v, crossn_field** phi);

#ifdef __cplusplus
}
#endif

#endif /* CROSSN_H */
