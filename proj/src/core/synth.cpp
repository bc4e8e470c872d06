#include "core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/spectral.hpp"

namespace crossn {

Field sample_field(const Grid& grid, FieldKind kind, int rows, int cols,
                   const std::function<double(int comp, const double* x)>& f) {
  Field out(grid, kind, rows, cols);
  std::vector<double> x(grid.n());
  const std::size_t v = grid.volume();
  for (int comp = 0; comp < out.components(); ++comp) {
    double* dst = out.component_flat(comp);
    for (std::size_t s = 0; s < v; ++s) {
      grid.coords(s, x.data());
      dst[s] = f(comp, x.data());
    }
  }
  return out;
}

Field sample_scalar(const Grid& grid, const std::function<double(const double*)>& f) {
  return sample_field(grid, FieldKind::Scalar, 1, 1,
                      [&](int, const double* x) { return f(x); });
}

namespace {

// Advances k through the box [-band, band]^n in odometer order (first axis
// slowest); returns false once the box is exhausted.
bool next_mode(std::vector<int>& k, int band) {
  for (int d = static_cast<int>(k.size()) - 1; d >= 0; --d) {
    if (k[d] < band) {
      ++k[d];
      std::fill(k.begin() + d + 1, k.end(), -band);
      return true;
    }
  }
  return false;
}

// Keep one representative of each +-k pair: the first nonzero component positive.
bool canonical(const std::vector<int>& k) {
  for (int kd : k) {
    if (kd > 0) return true;
    if (kd < 0) return false;
  }
  return false;  // k == 0 is excluded entirely (mean-free fields)
}

}  // namespace

Field random_band_limited(const Grid& grid, FieldKind kind, int rows, int cols,
                          int band, std::uint64_t seed) {
  const int n = grid.n();
  int shape_min = *std::min_element(grid.shape().begin(), grid.shape().end());
  if (band < 1 || 2 * band >= shape_min)
    throw ConfigError("random_band_limited: band " + std::to_string(band) +
                      " not resolved by shape (need 1 <= band < shape/2)");
  SpectralPlan& plan = plan_for(grid);
  Field out(grid, kind, rows, cols);
  const int ncomp = out.components();

  // Draw all coefficients first so the total power is known before synthesis.
  std::vector<std::vector<int>> modes;
  std::vector<int> k(n, -band);
  k.back() -= 1;  // one before the first odometer step
  while (next_mode(k, band))
    if (canonical(k)) modes.push_back(k);

  Rng rng(seed);
  std::vector<std::vector<std::complex<double>>> coef(
      ncomp, std::vector<std::complex<double>>(modes.size()));
  double power = 0.0;
  for (std::size_t m = 0; m < modes.size(); ++m)
    for (int c = 0; c < ncomp; ++c) {
      double re = rng.normal();
      double im = rng.normal();
      coef[c][m] = {re, im};
      power += 2.0 * (re * re + im * im);  // the mirrored mode carries equal power
    }
  const double scale = power > 0.0 ? 1.0 / std::sqrt(power) : 1.0;

  std::vector<std::complex<double>> spec(plan.spec_size());
  for (int c = 0; c < ncomp; ++c) {
    std::fill(spec.begin(), spec.end(), std::complex<double>(0.0, 0.0));
    for (std::size_t m = 0; m < modes.size(); ++m)
      place_mode(spec, plan, modes[m], scale * coef[c][m]);
    plan.backward(spec.data(), out.component_flat(c), /*normalized=*/false);
  }
  return out;
}

Field random_band_limited(const Grid& grid, FieldKind kind, int rows, int cols,
                          std::uint64_t seed) {
  int shape_min = *std::min_element(grid.shape().begin(), grid.shape().end());
  return random_band_limited(grid, kind, rows, cols, std::max(1, shape_min / 4), seed);
}

}  // namespace crossn
