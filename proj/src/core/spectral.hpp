#pragma once

#include <complex>
#include <mutex>
#include <vector>

#include "core/grid.hpp"

namespace crossn {

// Real <-> complex transforms on one component of a periodic field, with the
// last axis stored in reduced (Hermitian) form.  Plans are created once per
// grid shape with deterministic planning, cached in a registry, and guarded by
// a per-plan mutex (the scratch buffers are shared state).
class SpectralPlan {
public:
  explicit SpectralPlan(const Grid& grid);
  ~SpectralPlan();
  SpectralPlan(const SpectralPlan&) = delete;
  SpectralPlan& operator=(const SpectralPlan&) = delete;

  const Grid& grid() const { return grid_; }
  std::size_t spec_size() const { return spec_size_; }

  // Forward transform: coefficient of mode k comes out as volume * c_k for a
  // field sum_k c_k e^{i<k,x>}.
  std::vector<std::complex<double>> forward(const double* src);

  // Inverse: when normalized, backward(forward(f)) == f; unnormalized it is
  // the raw exponential sum, used for synthesis from unit-scale coefficients.
  void backward(const std::complex<double>* spec, double* dst, bool normalized = true);

  // Signed integer wavevector of a flat spectral index.  In derivative mode
  // the Nyquist column of every even axis is zeroed, which keeps odd-order
  // spectral derivatives real-valued and symmetric.
  void wavevector(std::size_t flat, double* k, bool derivative_mode) const;

  // Per-axis wavenumber of every flat spectral index, precomputed once.
  // derivative_mode as above: Nyquist zeroed for odd-order multipliers.
  const std::vector<double>& axis_wavenumbers(int axis, bool derivative_mode) const;

  // Flat spectral index of an explicit mode (requires |k_d| <= shape_d/2 - 1...
  // Nyquist allowed on non-negative last axis); used by synthesis and tests.
  std::size_t mode_index(const std::vector<int>& k) const;

private:
  Grid grid_;
  std::size_t spec_size_;
  double* real_;          // fftw-aligned scratch
  void* complex_;         // fftw_complex scratch
  void* fwd_;             // fftw_plan
  void* bwd_;
  std::mutex exec_mutex_;
  std::vector<std::vector<double>> wavenumbers_deriv_;  // [axis][spectral index]
  std::vector<std::vector<double>> wavenumbers_full_;
};

// Shared plan registry; creation is serialized.  The spectral backend needs
// every axis even and at least 4 samples, anything else is a config error.
SpectralPlan& plan_for(const Grid& grid);

// Writes coefficient c at mode k (all |k_d| < shape_d/2) and its conjugate at
// the mirrored position when that position lives in the reduced array, so the
// spectrum stays Hermitian-consistent.
void place_mode(std::vector<std::complex<double>>& spec, SpectralPlan& plan,
                const std::vector<int>& k, std::complex<double> c);

// Reads the coefficient c_k out of a forward transform (divides by volume).
std::complex<double> mode_coefficient(const std::vector<std::complex<double>>& spec,
                                      SpectralPlan& plan, const std::vector<int>& k);

}  // namespace crossn
