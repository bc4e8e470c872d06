#pragma once

#include <vector>

#include "core/algebra.hpp"
#include "core/grid.hpp"

namespace crossn {

// Splitting of a vector field into a curl-free and a divergence-free part.
// The k = 0 Fourier component is reported separately in mean_mode, so
// curlfree + divfree + mean_mode reconstructs the input.
struct HelmholtzResult {
  Field curlfree;
  Field divfree;
  std::vector<double> mean_mode;
  double sum_residual_linf;        // |a - (curlfree + divfree + mean)|_inf
  double div_of_divfree_linf;      // |div a_divfree|_inf
  double curl_of_curlfree_linf;    // |curl a_curlfree|_inf
};

// Mode-wise orthogonal projections: k <k, .> / |k|^2 onto gradients and
// [[k]]^T [[k]] / |k|^2 onto the complement.  The two projectors sum to the
// identity, so the decomposition is exact to round-off on any input.
HelmholtzResult spectral_decompose(const Field& a);

// Volume of the unit ball, pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n);

// Gradient of the fundamental solution: (x - y) / (n omega_n |x - y|^n).
Vec green_gradient(int n, const Vec& x, const Vec& y);

// Whole-space singular-integral route for numerically compactly supported
// fields: the parts are recovered by midpoint quadrature of the kernels
// against div a and curl a, skipping the singular cell y = x.  Supported for
// n in {2, 3}; the input must vanish (relative to its peak) within
// margin * box length of the boundary, or a precondition error is raised.
// Diagnostics are computed with centered differences since the recovered
// parts need not be periodic.
HelmholtzResult riesz_decompose(const Field& a, double support_tol = 1e-3,
                                double margin = 0.25);

}  // namespace crossn
