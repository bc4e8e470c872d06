#pragma once

#include <cstdint>
#include <vector>

#include "core/algebra.hpp"
#include "core/grid.hpp"

namespace crossn {

// Derivative backends share every operator definition below; they differ only
// in how a single partial derivative is taken.
//   Spectral: exact for band-limited fields; the Nyquist column is zeroed in
//             odd-order multipliers and kept (at +M/2) in even-order ones.
//   Central2: second-order centered differences with periodic wrap; the
//             Laplacian uses the compact 3-point stencil per axis.
enum class Backend { Spectral, Central2 };

// d/dx_axis of every component (axis 0-based).
Field partial(const Field& f, int axis, Backend backend);

// First-order operators.  The cross-coupled ones are generated from the
// sparsity pattern of [[.]]: row (i, j) carries +d_i in column j and -d_j in
// column i, so e.g. (curl a)_(i,j) = d_i a_j - d_j a_i.
Field grad(const Field& f, Backend b);            // scalar -> vector
Field divergence(const Field& a, Backend b);      // vector -> scalar
Field curl_n(const Field& a, Backend b);          // vector -> cross
Field adjoint_curl(const Field& g, Backend b);    // cross -> vector, the transpose symbol
Field derivative(const Field& a, Backend b);      // m components -> m x n, (Da)_rc = d_c a_r
Field matrix_divergence(const Field& P, Backend b);  // m x n -> m (row-wise divergence)
Field matrix_curl(const Field& P, Backend b);        // m x n -> m x N (row-wise curl)
Field matrix_adjoint(const Field& W, Backend b);     // m x N -> m x n (row-wise transpose symbol)

// Second-order operators.
Field laplacian(const Field& f, Backend b);       // componentwise
Field inverse_laplacian(const Field& f);          // spectral, mean-free input, mean-free output
Field inc_n(const Field& P, Backend b);           // n x n -> N x N, -[[d]] P [[d]]^T
Field inc_sandwich_scalar(const Field& zeta, Backend b);  // [[d]]^T (zeta Id_N) [[d]] = (lap zeta) Id - Hess zeta

// Pointwise conversions between cross fields and skew matrix fields.
Field skew_field_from_cross(const Field& g);      // N comps -> n x n skew matrix field
Field cross_field_from_skew(const Field& A, double tol = 1e-12);

// Classic 3-component curl applied to each row of an m x 3 matrix field (or to
// a 3-vector field), with the usual orientation (d2 v3 - d3 v2, ...).
Field classic_curl_rows(const Field& P, Backend b);

// Dislocation-style correspondence in three dimensions: the classic row curl
// of the classic skew embedding Anti(a) equals (div a) Id - (Da)^T, so the full
// derivative Da can be recovered from that curl alone.
Field nye_anti(const Field& a);                   // 3-vector -> 3 x 3 skew, classic axial convention
Field nye_vee(const Field& A, double tol = 1e-12);
Field nye_curl_of_skew(const Field& a, Backend b);       // ClassicCurl(Anti a)
Field nye_recover_derivative(const Field& F);            // tr(F)/2 Id - F^T, pointwise

// Laplacian splittings: lap a = grad div a + [[d]]^T curl a, and its matrix
// version lap P = D Div P + (Curl P) [[d]].  residual is the max-norm gap
// between the backend Laplacian and the assembled right-hand side.
struct LaplacianSplit {
  Field grad_div;
  Field adjoint_curl_part;
  double residual;
};
LaplacianSplit vector_laplacian_split(const Field& a, Backend b);

struct MatrixLaplacianSplit {
  Field derivative_div;
  Field curl_adjoint_part;
  double residual;
};
MatrixLaplacianSplit matrix_laplacian_split(const Field& P, Backend b);

// Integration by parts on the torus: integral of <curl a, g> + <a, [[d]]^T g>
// vanishes; likewise for matrix fields with the row-wise operators.  Returns
// |sum| / max(1, |term1|, |term2|).
double parts_residual_vector(const Field& a, const Field& g, Backend b);
double parts_residual_matrix(const Field& P, const Field& Q, Backend b);

// curl [[d]]^T curl a = lap curl a; max-norm residual.
double curl_adjoint_curl_residual(const Field& a, Backend b);

// Principal symbols of the first-order operators at frequency b: grad -> b,
// div -> b^T, curl -> [[b]], adjoint curl -> [[b]]^T.
enum class FirstOrderOp { Grad, Div, CurlN, AdjointCurl };
Mat symbol(FirstOrderOp op, const Vec& b);

// Smallest singular value of the symbol over its domain, minimized over
// random unit frequencies.  A zero value comes with a unit kernel witness:
// overdetermined injectivity fails exactly when the symbol has a nullspace.
struct EllipticityReport {
  double min_sigma;
  bool elliptic;
  Vec witness_b;        // frequency attaining the minimum
  Vec witness;          // unit vector with |symbol * witness| = min_sigma
  double witness_residual;
};
EllipticityReport ellipticity_report(FirstOrderOp op, int n, int trials, std::uint64_t seed);

// Mode-wise solvability of D a_n(A) = L_k (Curl A) over skew fields: for each
// frequency k the least-squares system over a basis of skew matrices is solved
// exactly; the relative residual certifies that the map L_k exists.
double nye_determinacy_mode_residual(int n, const std::vector<int>& k);
double nye_determinacy_max_residual(int n, const std::vector<int>& shape);

}  // namespace crossn
