#include "core/spectral.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>

#include "core/errors.hpp"

namespace crossn {

namespace {
// FFTW plan creation is not thread-safe; every fftw_plan_* call below holds this.
std::mutex g_plan_mutex;
}  // namespace

SpectralPlan::SpectralPlan(const Grid& grid) : grid_(grid) {
  const int n = grid_.n();
  std::vector<int> dims(grid_.shape());
  for (int m : dims)
    if (m < 4 || m % 2 != 0)
      throw ConfigError("spectral backend requires every axis even and >= 4, got shape entry " +
                        std::to_string(m));
  spec_size_ = grid_.volume() / static_cast<std::size_t>(dims[n - 1]) *
               static_cast<std::size_t>(dims[n - 1] / 2 + 1);
  real_ = static_cast<double*>(fftw_malloc(sizeof(double) * grid_.volume()));
  complex_ = fftw_malloc(sizeof(fftw_complex) * spec_size_);
  {
    std::lock_guard<std::mutex> lk(g_plan_mutex);
    // FFTW_ESTIMATE keeps planning deterministic (no timing-based choices).
    fwd_ = fftw_plan_dft_r2c(n, dims.data(), real_, static_cast<fftw_complex*>(complex_),
                             FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r(n, dims.data(), static_cast<fftw_complex*>(complex_), real_,
                             FFTW_ESTIMATE);
  }
  wavenumbers_deriv_.assign(n, std::vector<double>(spec_size_));
  wavenumbers_full_.assign(n, std::vector<double>(spec_size_));
  std::vector<double> k(n);
  for (std::size_t s = 0; s < spec_size_; ++s) {
    wavevector(s, k.data(), true);
    for (int d = 0; d < n; ++d) wavenumbers_deriv_[d][s] = k[d];
    wavevector(s, k.data(), false);
    for (int d = 0; d < n; ++d) wavenumbers_full_[d][s] = k[d];
  }
}

SpectralPlan::~SpectralPlan() {
  std::lock_guard<std::mutex> lk(g_plan_mutex);
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
  fftw_free(real_);
  fftw_free(complex_);
}

std::vector<std::complex<double>> SpectralPlan::forward(const double* src) {
  std::lock_guard<std::mutex> lk(exec_mutex_);
  std::memcpy(real_, src, sizeof(double) * grid_.volume());
  fftw_execute(static_cast<fftw_plan>(fwd_));
  const auto* c = static_cast<const std::complex<double>*>(complex_);
  return std::vector<std::complex<double>>(c, c + spec_size_);
}

void SpectralPlan::backward(const std::complex<double>* spec, double* dst, bool normalized) {
  std::lock_guard<std::mutex> lk(exec_mutex_);
  std::memcpy(complex_, spec, sizeof(fftw_complex) * spec_size_);
  fftw_execute(static_cast<fftw_plan>(bwd_));
  const double scale = normalized ? 1.0 / static_cast<double>(grid_.volume()) : 1.0;
  for (std::size_t i = 0, e = grid_.volume(); i < e; ++i) dst[i] = real_[i] * scale;
}

void SpectralPlan::wavevector(std::size_t flat, double* k, bool derivative_mode) const {
  const auto& shape = grid_.shape();
  const int n = grid_.n();
  for (int d = n - 1; d >= 0; --d) {
    const int m = shape[d];
    const std::size_t extent = (d == n - 1) ? static_cast<std::size_t>(m / 2 + 1)
                                            : static_cast<std::size_t>(m);
    int j = static_cast<int>(flat % extent);
    flat /= extent;
    int kd = (j <= m / 2) ? j : j - m;
    if (derivative_mode && kd == m / 2) kd = 0;  // even axes only; odd have no Nyquist column
    k[d] = static_cast<double>(kd);
  }
}

const std::vector<double>& SpectralPlan::axis_wavenumbers(int axis, bool derivative_mode) const {
  if (axis < 0 || axis >= grid_.n()) throw DomainError("axis_wavenumbers: axis out of range");
  return derivative_mode ? wavenumbers_deriv_[axis] : wavenumbers_full_[axis];
}

std::size_t SpectralPlan::mode_index(const std::vector<int>& k) const {
  const auto& shape = grid_.shape();
  const int n = grid_.n();
  if (static_cast<int>(k.size()) != n) throw DomainError("mode_index: wrong mode length");
  if (k[n - 1] < 0 || k[n - 1] > shape[n - 1] / 2)
    throw DomainError("mode_index: last component must lie in [0, shape/2]");
  std::size_t flat = 0;
  for (int d = 0; d < n; ++d) {
    const int m = shape[d];
    if (k[d] < -m / 2 || k[d] > m / 2) throw DomainError("mode_index: mode beyond Nyquist");
    const int j = (k[d] % m + m) % m;
    const std::size_t extent = (d == n - 1) ? static_cast<std::size_t>(m / 2 + 1)
                                            : static_cast<std::size_t>(m);
    flat = flat * extent + static_cast<std::size_t>(d == n - 1 ? k[d] : j);
  }
  return flat;
}

SpectralPlan& plan_for(const Grid& grid) {
  static std::mutex registry_mutex;
  static std::map<std::vector<int>, std::unique_ptr<SpectralPlan>> registry;
  std::lock_guard<std::mutex> lk(registry_mutex);
  auto it = registry.find(grid.shape());
  if (it == registry.end())
    it = registry.emplace(grid.shape(), std::make_unique<SpectralPlan>(grid)).first;
  return *it->second;
}

void place_mode(std::vector<std::complex<double>>& spec, SpectralPlan& plan,
                const std::vector<int>& k, std::complex<double> c) {
  const auto& shape = plan.grid().shape();
  const int n = plan.grid().n();
  for (int d = 0; d < n; ++d)
    if (std::abs(k[d]) >= (shape[d] + 1) / 2)
      throw DomainError("place_mode: mode not strictly below Nyquist");
  std::vector<int> kk(k), neg(k);
  for (int d = 0; d < n; ++d) neg[d] = -k[d];
  if (k[n - 1] > 0) {
    spec[plan.mode_index(kk)] += c;
  } else if (k[n - 1] < 0) {
    spec[plan.mode_index(neg)] += std::conj(c);
  } else {
    // Both the mode and its mirror live in the k_last = 0 plane of the
    // reduced array; write both halves to keep the spectrum Hermitian.
    spec[plan.mode_index(kk)] += c;
    spec[plan.mode_index(neg)] += std::conj(c);
  }
}

std::complex<double> mode_coefficient(const std::vector<std::complex<double>>& spec,
                                      SpectralPlan& plan, const std::vector<int>& k) {
  const int n = plan.grid().n();
  std::complex<double> raw;
  if (k[n - 1] >= 0) {
    raw = spec[plan.mode_index(k)];
  } else {
    std::vector<int> neg(k);
    for (int d = 0; d < n; ++d) neg[d] = -k[d];
    raw = std::conj(spec[plan.mode_index(neg)]);
  }
  return raw / static_cast<double>(plan.grid().volume());
}

}  // namespace crossn
