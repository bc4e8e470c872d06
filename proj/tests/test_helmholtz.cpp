#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/algebra.hpp"
#include "core/calculus.hpp"
#include "core/errors.hpp"
#include "core/grid.hpp"
#include "core/helmholtz.hpp"
#include "core/rng.hpp"
#include "core/synth.hpp"

using namespace crossn;

namespace {

double rel_l2(const Field& a, const Field& b) {
  const double scale = std::max(1e-300, l2_norm(b));
  return l2_norm(a - b) / scale;
}

// Gaussian bump well inside [0, 2pi)^2, spectrally resolved on 64^2.
Field bump_scalar(const Grid& g, double sigma) {
  return sample_scalar(g, [&](const double* x) {
    double r2 = 0.0;
    for (int d = 0; d < g.n(); ++d) r2 += (x[d] - M_PI) * (x[d] - M_PI);
    return std::exp(-r2 / (2.0 * sigma * sigma));
  });
}

}  // namespace

TEST_CASE("mode-wise projector completeness from the cross matrix") {
  // [[k]]^T [[k]] + k k^T = |k|^2 Id for every frequency: the two projectors
  // add to the identity, which is what makes the split exact.
  for (int n : {2, 3, 4, 5}) {
    Rng rng(314 + n);
    for (int t = 0; t < 50; ++t) {
      Vec k = rng.normal_vector(n);
      Mat K = cross_matrix(k);
      Mat sum = K.transpose() * K + k * k.transpose();
      Mat err = sum - k.squaredNorm() * Mat::Identity(n, n);
      CHECK(err.cwiseAbs().maxCoeff() <= 1e-14 * k.squaredNorm());
    }
  }
}

TEST_CASE("spectral split reconstructs and lands in the right kernels") {
  struct Setup {
    int n;
    std::vector<int> shape;
    int band;
  };
  for (const Setup& s :
       {Setup{2, {24, 24}, 5}, Setup{3, {12, 12, 12}, 2}, Setup{4, {8, 8, 8, 8}, 1}}) {
    Grid g(s.n, s.shape);
    Field a = random_band_limited(g, FieldKind::Vector, s.n, 1, s.band, kDefaultSeed);
    HelmholtzResult r = spectral_decompose(a);

    CHECK(r.sum_residual_linf <= 1e-12);
    CHECK(r.div_of_divfree_linf <= 1e-11);
    CHECK(r.curl_of_curlfree_linf <= 1e-11);

    // Mean-free input: no zero mode.
    for (double m : r.mean_mode) CHECK(std::abs(m) <= 1e-13);

    // L2 orthogonality of the parts.
    CHECK(std::abs(l2_inner(r.curlfree, r.divfree)) <= 1e-10);

    // Idempotence: re-splitting a part returns it unchanged.
    HelmholtzResult rr = spectral_decompose(r.divfree);
    CHECK(linf_norm(rr.curlfree) <= 1e-10);
    CHECK(max_abs_diff(rr.divfree, r.divfree) <= 1e-10);
    HelmholtzResult rc = spectral_decompose(r.curlfree);
    CHECK(linf_norm(rc.divfree) <= 1e-10);
    CHECK(max_abs_diff(rc.curlfree, r.curlfree) <= 1e-10);
  }
}

TEST_CASE("pure gradients and pure rotations are fixed points") {
  Grid g(3, {12, 12, 12});
  Field phi = random_band_limited(g, FieldKind::Scalar, 1, 1, 2, 77);
  Field gradient = grad(phi, Backend::Spectral);
  HelmholtzResult rg = spectral_decompose(gradient);
  CHECK(linf_norm(rg.divfree) <= 1e-11);
  CHECK(max_abs_diff(rg.curlfree, gradient) <= 1e-11);

  Field psi = random_band_limited(g, FieldKind::Cross, 3, 1, 2, 78);
  Field rotation = adjoint_curl(psi, Backend::Spectral);
  HelmholtzResult rr = spectral_decompose(rotation);
  CHECK(linf_norm(rr.curlfree) <= 1e-11);
  CHECK(max_abs_diff(rr.divfree, rotation) <= 1e-11);
}

TEST_CASE("constant offsets go to the mean mode, not the parts") {
  Grid g(2, {16, 16});
  Field a = random_band_limited(g, FieldKind::Vector, 2, 1, 3, 5);
  Field shifted = a;
  for (std::size_t i = 0; i < g.volume(); ++i) {
    shifted.component(0)[i] += 2.5;
    shifted.component(1)[i] -= 1.25;
  }
  HelmholtzResult r0 = spectral_decompose(a);
  HelmholtzResult r1 = spectral_decompose(shifted);
  CHECK(r1.mean_mode[0] == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(r1.mean_mode[1] == doctest::Approx(-1.25).epsilon(1e-12));
  CHECK(max_abs_diff(r0.curlfree, r1.curlfree) <= 1e-12);
  CHECK(max_abs_diff(r0.divfree, r1.divfree) <= 1e-12);
  CHECK(r1.sum_residual_linf <= 1e-12);
}

TEST_CASE("white noise with Nyquist energy still reconstructs exactly") {
  Grid g(2, {16, 16});
  Field a(g, FieldKind::Vector, 2, 1);
  Rng rng(123);
  for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
  HelmholtzResult r = spectral_decompose(a);
  CHECK(r.sum_residual_linf <= 1e-12);
  CHECK(std::abs(l2_inner(r.curlfree, r.divfree)) <= 1e-10);
  // The split follows the same wavevector convention as the discrete
  // derivatives, so the kernel diagnostics stay exact even though this field
  // carries energy in every mode, Nyquist columns included.
  CHECK(r.div_of_divfree_linf <= 1e-11);
  CHECK(r.curl_of_curlfree_linf <= 1e-11);
  HelmholtzResult rc = spectral_decompose(r.curlfree);
  HelmholtzResult rd = spectral_decompose(r.divfree);
  CHECK(rel_l2(rc.curlfree, r.curlfree) <= 1e-10);
  CHECK(rel_l2(rd.divfree, r.divfree) <= 1e-10);
}

TEST_CASE("fundamental-solution gradient oracles") {
  CHECK(unit_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-15));
  CHECK(unit_ball_volume(4) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-15));

  Vec x2(2), y2(2);
  x2 << 1.0, 0.0;
  y2 << 0.0, 0.0;
  Vec g2 = green_gradient(2, x2, y2);
  CHECK(g2[0] == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
  CHECK(std::abs(g2[1]) <= 1e-16);

  Vec x3(3), y3(3);
  x3 << 0.0, 0.0, 2.0;
  y3 << 0.0, 0.0, 0.0;
  Vec g3 = green_gradient(3, x3, y3);
  CHECK(g3[2] == doctest::Approx(1.0 / (16.0 * M_PI)).epsilon(1e-14));
  CHECK(std::abs(g3[0]) <= 1e-16);
  CHECK(std::abs(g3[1]) <= 1e-16);
}

TEST_CASE("whole-space quadrature agrees with the spectral split on bumps") {
  Grid g(2, {64, 64});
  Field phi = bump_scalar(g, 0.35);

  // Curl-free probe: a gradient bump.
  Field a = grad(phi, Backend::Spectral);
  HelmholtzResult spec = spectral_decompose(a);
  HelmholtzResult quad = riesz_decompose(a);
  CHECK(rel_l2(quad.curlfree, spec.curlfree) <= 5e-2);
  CHECK(l2_norm(quad.divfree) <= 5e-2 * l2_norm(a));

  // Divergence-free probe: the adjoint curl of a bump stream function.
  Field psi(g, FieldKind::Cross, 1, 1);
  std::copy(phi.data(), phi.data() + phi.size(), psi.data());
  Field w = adjoint_curl(psi, Backend::Spectral);
  HelmholtzResult spec_w = spectral_decompose(w);
  HelmholtzResult quad_w = riesz_decompose(w);
  CHECK(rel_l2(quad_w.divfree, spec_w.divfree) <= 5e-2);
  CHECK(l2_norm(quad_w.curlfree) <= 5e-2 * l2_norm(w));

  // The quadrature's own reconstruction stays within its accuracy class.
  CHECK(quad.sum_residual_linf <= 5e-2 * linf_norm(a));
}

TEST_CASE("quadrature preconditions") {
  Grid g(2, {32, 32});
  // A wide bump reaches the margin band: the whole-space model breaks down.
  Field wide = grad(bump_scalar(g, 1.5), Backend::Spectral);
  CHECK_THROWS_AS(riesz_decompose(wide), PreconditionError);

  // Unsupported dimension.
  Grid g4(4, {6, 6, 6, 6});
  Field a4 = random_band_limited(g4, FieldKind::Vector, 4, 1, 1, 3);
  CHECK_THROWS_AS(riesz_decompose(a4), ConfigError);

  // Not a vector field.
  Field s = Field::scalar(g);
  CHECK_THROWS_AS(riesz_decompose(s), DomainError);
  CHECK_THROWS_AS(spectral_decompose(s), DomainError);
}
