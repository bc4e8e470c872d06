#include "core/helmholtz.hpp"

#include <cmath>
#include <complex>

#include "core/calculus.hpp"
#include "core/errors.hpp"
#include "core/spectral.hpp"
#include "core/threads.hpp"

namespace crossn {

namespace {

HelmholtzResult finish(const Field& a, Field curlfree, Field divfree,
                       std::vector<double> mean, Backend diag_backend) {
  HelmholtzResult r{std::move(curlfree), std::move(divfree), std::move(mean), 0.0, 0.0, 0.0};
  Field recon = r.curlfree + r.divfree;
  const std::size_t v = a.grid().volume();
  for (int c = 0; c < a.components(); ++c) {
    double* p = recon.component_flat(c);
    for (std::size_t s = 0; s < v; ++s) p[s] += r.mean_mode[c];
  }
  r.sum_residual_linf = max_abs_diff(a, recon);
  r.div_of_divfree_linf = linf_norm(divergence(r.divfree, diag_backend));
  r.curl_of_curlfree_linf = linf_norm(curl_n(r.curlfree, diag_backend));
  return r;
}

}  // namespace

HelmholtzResult spectral_decompose(const Field& a) {
  if (a.kind() != FieldKind::Vector)
    throw DomainError("spectral_decompose: vector field required");
  const Grid& g = a.grid();
  const int n = g.n();
  SpectralPlan& plan = plan_for(g);
  const std::size_t S = plan.spec_size();

  std::vector<std::vector<std::complex<double>>> ahat(n);
  for (int c = 0; c < n; ++c) ahat[c] = plan.forward(a.component_flat(c));

  std::vector<double> mean(n);
  for (int c = 0; c < n; ++c)
    mean[c] = ahat[c][0].real() / static_cast<double>(g.volume());

  std::vector<std::vector<std::complex<double>>> chat(n), dhat(n);
  for (int c = 0; c < n; ++c) {
    chat[c].assign(S, {0.0, 0.0});
    dhat[c].assign(S, {0.0, 0.0});
  }

  Vec k(n);
  Eigen::VectorXcd am(n), cm(n), dm(n);
  for (std::size_t s = 0; s < S; ++s) {
    // The split is taken along the derivative-mode wavevector (Nyquist
    // zeroed), the same one the discrete div and curl differentiate along; it
    // flips sign as a whole between the mirror entries of the columns stored
    // twice in the reduced layout, so both receive the same real projector
    // and the parts stay Hermitian-consistent.  Pure-Nyquist modes are
    // invisible to every odd-order derivative; they are split along their
    // alias representative, whose entries are self-mirrored and real.
    for (int d = 0; d < n; ++d) k[d] = plan.axis_wavenumbers(d, true)[s];
    double k2 = k.squaredNorm();
    if (k2 == 0.0) {
      for (int d = 0; d < n; ++d) k[d] = plan.axis_wavenumbers(d, false)[s];
      k2 = k.squaredNorm();
      if (k2 == 0.0) continue;  // mean mode goes to mean_mode, not to the parts
    }
    for (int c = 0; c < n; ++c) am[c] = ahat[c][s];
    // Projectors assembled literally from the cross matrix so that their
    // completeness is inherited from the matrix identity, not hard-coded.
    Mat K = cross_matrix(k);
    Mat Pdiv = (K.transpose() * K) / k2;
    Mat Pcurl = (k * k.transpose()) / k2;
    cm = Pcurl * am;
    dm = Pdiv * am;
    for (int c = 0; c < n; ++c) {
      chat[c][s] = cm[c];
      dhat[c][s] = dm[c];
    }
  }

  Field curlfree = Field::vector(g);
  Field divfree = Field::vector(g);
  for (int c = 0; c < n; ++c) {
    plan.backward(chat[c].data(), curlfree.component_flat(c));
    plan.backward(dhat[c].data(), divfree.component_flat(c));
  }
  return finish(a, std::move(curlfree), std::move(divfree), std::move(mean), Backend::Spectral);
}

double unit_ball_volume(int n) {
  if (n < 1) throw DomainError("unit_ball_volume: n must be >= 1");
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

Vec green_gradient(int n, const Vec& x, const Vec& y) {
  if (x.size() != n || y.size() != n)
    throw DomainError("green_gradient: point dimension mismatch");
  Vec d = x - y;
  const double r = d.norm();
  if (r == 0.0) throw DomainError("green_gradient: singular point x = y");
  return d / (n * unit_ball_volume(n) * std::pow(r, n));
}

HelmholtzResult riesz_decompose(const Field& a, double support_tol, double margin) {
  if (a.kind() != FieldKind::Vector)
    throw DomainError("riesz_decompose: vector field required");
  const Grid& g = a.grid();
  const int n = g.n();
  if (n != 2 && n != 3)
    throw ConfigError("riesz_decompose: configured for n in {2, 3}, got n = " +
                      std::to_string(n));

  // Support check: the field must be negligible within `margin` of the box
  // boundary for the whole-space kernels to apply.
  const double peak = linf_norm(a);
  const double lo = margin * 2.0 * M_PI;
  const double hi = (1.0 - margin) * 2.0 * M_PI;
  const std::size_t v = g.volume();
  std::vector<double> xs(static_cast<std::size_t>(n) * v);
  for (std::size_t s = 0; s < v; ++s) g.coords(s, &xs[s * n]);
  double edge = 0.0;
  for (std::size_t s = 0; s < v; ++s) {
    bool in_band = false;
    for (int d = 0; d < n; ++d)
      if (xs[s * n + d] < lo || xs[s * n + d] > hi) in_band = true;
    if (!in_band) continue;
    for (int c = 0; c < n; ++c)
      edge = std::max(edge, std::abs(a.component_flat(c)[s]));
  }
  if (edge > support_tol * std::max(peak, 1e-300))
    throw PreconditionError(
        "riesz_decompose: field is not numerically supported away from the boundary "
        "(edge/peak = " + std::to_string(edge / std::max(peak, 1e-300)) + ")");

  // Sources: div a and curl a, sampled spectrally (exact for a smooth
  // compactly supported bump, whose periodic extension is smooth).
  Field div_a = divergence(a, Backend::Spectral);
  Field curl_a = curl_n(a, Backend::Spectral);
  const int N = cross_dim(n);
  const double w = g.cell_volume() / (n * unit_ball_volume(n));

  Field curlfree = Field::vector(g);
  Field divfree = Field::vector(g);
  const double* dv = div_a.data();
  std::vector<const double*> cu(N);
  for (int c = 0; c < N; ++c) cu[c] = curl_a.component_flat(c);

  parallel_for(0, v, [&](std::size_t s) {
    const double* x = &xs[s * n];
    double acc_c[3] = {0.0, 0.0, 0.0};
    double acc_d[3] = {0.0, 0.0, 0.0};
    if (n == 2) {
      for (std::size_t t = 0; t < v; ++t) {
        if (t == s) continue;  // midpoint rule skips the singular cell
        const double d0 = x[0] - xs[t * 2];
        const double d1 = x[1] - xs[t * 2 + 1];
        const double inv = 1.0 / (d0 * d0 + d1 * d1);
        const double fd = dv[t] * inv;
        acc_c[0] += d0 * fd;
        acc_c[1] += d1 * fd;
        const double fc = cu[0][t] * inv;
        acc_d[0] -= d1 * fc;  // [[d]]^T applied to the scalar curl
        acc_d[1] += d0 * fc;
      }
    } else {
      for (std::size_t t = 0; t < v; ++t) {
        if (t == s) continue;
        const double d0 = x[0] - xs[t * 3];
        const double d1 = x[1] - xs[t * 3 + 1];
        const double d2 = x[2] - xs[t * 3 + 2];
        const double r2 = d0 * d0 + d1 * d1 + d2 * d2;
        const double inv = 1.0 / (r2 * std::sqrt(r2));
        const double fd = dv[t] * inv;
        acc_c[0] += d0 * fd;
        acc_c[1] += d1 * fd;
        acc_c[2] += d2 * fd;
        const double c0 = cu[0][t] * inv, c1 = cu[1][t] * inv, c2 = cu[2][t] * inv;
        acc_d[0] += -d1 * c0 - d2 * c1;  // rows of [[d]]^T in pair order
        acc_d[1] += d0 * c0 - d2 * c2;
        acc_d[2] += d0 * c1 + d1 * c2;
      }
    }
    for (int c = 0; c < n; ++c) {
      curlfree.component_flat(c)[s] = w * acc_c[c];
      divfree.component_flat(c)[s] = w * acc_d[c];
    }
  });

  std::vector<double> mean(n);
  for (int c = 0; c < n; ++c) mean[c] = component_mean(a, c);
  return finish(a, std::move(curlfree), std::move(divfree), std::move(mean), Backend::Central2);
}

}  // namespace crossn
