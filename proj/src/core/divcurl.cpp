#include "core/divcurl.hpp"

#include <cmath>
#include <limits>

#include "core/calculus.hpp"
#include "core/errors.hpp"

namespace crossn {

std::pair<OscillatoryFamily, OscillatoryFamily> build_families(
    const Field& u, const Field& v, int axis, double amplitude,
    std::vector<int> k_values, int p) {
  if (u.kind() != FieldKind::Vector || v.kind() != FieldKind::Vector)
    throw DomainError("build_families: vector fields required");
  require_same_layout(u, v, "build_families");
  const Grid& g = u.grid();
  const int n = g.n();
  if (axis < 1 || axis > n)
    throw DomainError("build_families: axis must lie in [1, " + std::to_string(n) + "]");
  if (p == 0) p = (axis == 1) ? 2 : 1;
  if (p < 1 || p > n || p == axis)
    throw DomainError("build_families: perturbed component must differ from axis");
  if (k_values.empty()) throw DomainError("build_families: empty k list");
  for (int k : k_values)
    if (k < 1 || k > g.shape()[axis - 1] / 4)
      throw ConfigError("build_families: k = " + std::to_string(k) +
                        " not resolved by the grid (need 1 <= k <= shape/4)");
  OscillatoryFamily fu{u, axis - 1, p - 1, amplitude, k_values};
  OscillatoryFamily fv{v, axis - 1, axis - 1, amplitude, k_values};
  return {std::move(fu), std::move(fv)};
}

Field family_member(const OscillatoryFamily& fam, int k) {
  const Grid& g = fam.base.grid();
  Field out = fam.base;
  const auto& shape = g.shape();
  std::size_t stride = 1;
  for (int d = g.n() - 1; d > fam.axis; --d) stride *= static_cast<std::size_t>(shape[d]);
  const std::size_t m = static_cast<std::size_t>(shape[fam.axis]);
  double* dst = out.component_flat(fam.comp);
  for (std::size_t s = 0, v = g.volume(); s < v; ++s) {
    const double x = 2.0 * M_PI * static_cast<double>((s / stride) % m) / static_cast<double>(m);
    dst[s] += fam.amplitude * std::sin(k * x);
  }
  return out;
}

WeakPairingReport weak_pairing(const OscillatoryFamily& fu, const OscillatoryFamily& fv,
                               const Field& phi) {
  if (phi.kind() != FieldKind::Scalar) throw DomainError("weak_pairing: phi must be scalar");
  if (!(phi.grid() == fu.base.grid()))
    throw DomainError("weak_pairing: phi lives on a different grid");
  if (fu.k_values != fv.k_values || fu.axis != fv.axis)
    throw DomainError("weak_pairing: families do not match");
  const Grid& g = fu.base.grid();
  const int n = g.n();
  const std::size_t v = g.volume();
  const double* w = phi.data();

  auto weighted_dot = [&](const Field& a, const Field& b) {
    double s = 0.0;
    for (int c = 0; c < n; ++c) {
      const double* pa = a.component_flat(c);
      const double* pb = b.component_flat(c);
      for (std::size_t i = 0; i < v; ++i) s += w[i] * pa[i] * pb[i];
    }
    return s * g.cell_volume();
  };

  WeakPairingReport rep;
  rep.k_values = fu.k_values;
  rep.limit = weighted_dot(fu.base, fv.base);
  for (int k : rep.k_values) {
    const double p = weighted_dot(family_member(fu, k), family_member(fv, k));
    rep.pairings.push_back(p);
    rep.deviations.push_back(std::abs(p - rep.limit));
  }

  // Clamp at the round-off floor before fitting; fully collapsed deviations
  // mean the decay is complete and the exponent is reported as -inf.
  const double floor_val = 1e-14 * (1.0 + std::abs(rep.limit));
  std::vector<double> lk, ld;
  for (std::size_t i = 0; i < rep.deviations.size(); ++i)
    if (rep.deviations[i] > floor_val) {
      lk.push_back(std::log(static_cast<double>(rep.k_values[i])));
      ld.push_back(std::log(rep.deviations[i]));
    }
  if (lk.empty()) {
    rep.exponent = -std::numeric_limits<double>::infinity();
  } else if (lk.size() == 1) {
    rep.exponent = std::numeric_limits<double>::quiet_NaN();
  } else {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lk.size(); ++i) {
      mx += lk[i];
      my += ld[i];
    }
    mx /= lk.size();
    my /= ld.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lk.size(); ++i) {
      sxx += (lk[i] - mx) * (lk[i] - mx);
      sxy += (lk[i] - mx) * (ld[i] - my);
    }
    rep.exponent = sxy / sxx;
  }
  return rep;
}

std::pair<double, double> commutation_residuals(const Field& f) {
  if (f.kind() != FieldKind::Vector)
    throw DomainError("commutation_residuals: vector field required");
  const double mean_tol = 1e-10 * std::max(1.0, linf_norm(f));
  for (int c = 0; c < f.components(); ++c)
    if (std::abs(component_mean(f, c)) > mean_tol)
      throw PreconditionError("commutation_residuals: input must be mean-free");
  Field w = inverse_laplacian(f);
  const double rd =
      max_abs_diff(inverse_laplacian(divergence(f, Backend::Spectral)),
                   divergence(w, Backend::Spectral));
  const double rc = max_abs_diff(inverse_laplacian(curl_n(f, Backend::Spectral)),
                                 curl_n(w, Backend::Spectral));
  return {rd, rc};
}

double potential_reconstruction_residual(const Field& u) {
  if (u.kind() != FieldKind::Vector)
    throw DomainError("potential_reconstruction_residual: vector field required");
  Field w = inverse_laplacian(u);
  Field psi = divergence(w, Backend::Spectral);
  Field g = curl_n(w, Backend::Spectral);
  return max_abs_diff(grad(psi, Backend::Spectral) + adjoint_curl(g, Backend::Spectral), u);
}

}  // namespace crossn
