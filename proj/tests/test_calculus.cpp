#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include "core/algebra.hpp"
#include "core/calculus.hpp"
#include "core/errors.hpp"
#include "core/grid.hpp"
#include "core/rng.hpp"
#include "core/suites.hpp"
#include "core/synth.hpp"

using namespace crossn;

namespace {

Grid grid2(int m = 16) { return Grid(2, {m, m}); }
Grid grid3(int m = 8) { return Grid(3, {m, m, m}); }

// Field whose component c is Re(z_c e^{i<k,x>}): the common single-mode probe.
Field mode_field(const Grid& g, FieldKind kind, int rows, int cols,
                 const Eigen::VectorXcd& z, const std::vector<int>& k) {
  return sample_field(g, kind, rows, cols, [&](int comp, const double* x) {
    double phase = 0.0;
    for (int d = 0; d < g.n(); ++d) phase += k[d] * x[d];
    return z[comp].real() * std::cos(phase) - z[comp].imag() * std::sin(phase);
  });
}

Eigen::VectorXcd random_complex(Rng& rng, int len) {
  Eigen::VectorXcd z(len);
  for (int i = 0; i < len; ++i) z[i] = std::complex<double>(rng.normal(), rng.normal());
  return z;
}

Vec to_vec(const std::vector<int>& k) {
  Vec v(static_cast<int>(k.size()));
  for (std::size_t d = 0; d < k.size(); ++d) v[static_cast<int>(d)] = k[d];
  return v;
}

}  // namespace

TEST_CASE("spectral partial derivatives of single harmonics are exact") {
  Grid g = grid2();
  for (int axis = 0; axis < 2; ++axis) {
    Field f = sample_scalar(g, [&](const double* x) { return std::sin(x[axis]); });
    Field df = partial(f, axis, Backend::Spectral);
    Field want = sample_scalar(g, [&](const double* x) { return std::cos(x[axis]); });
    CHECK(max_abs_diff(df, want) <= 1e-14);
    Field other = partial(f, 1 - axis, Backend::Spectral);
    CHECK(linf_norm(other) <= 1e-14);
  }
  Field f = sample_scalar(g, [](const double* x) { return std::sin(x[0]); });
  CHECK_THROWS_AS(partial(f, 2, Backend::Spectral), DomainError);
  CHECK_THROWS_AS(partial(f, -1, Backend::Spectral), DomainError);
}

TEST_CASE("first-order operators on closed-form fields") {
  Grid g = grid2();

  // div (sin x1, 0) = cos x1
  Field a = sample_field(g, FieldKind::Vector, 2, 1, [](int c, const double* x) {
    return c == 0 ? std::sin(x[0]) : 0.0;
  });
  Field want_div = sample_scalar(g, [](const double* x) { return std::cos(x[0]); });
  CHECK(max_abs_diff(divergence(a, Backend::Spectral), want_div) <= 1e-14);

  // grad sin x2 = (0, cos x2)
  Field s = sample_scalar(g, [](const double* x) { return std::sin(x[1]); });
  Field want_grad = sample_field(g, FieldKind::Vector, 2, 1, [](int c, const double* x) {
    return c == 1 ? std::cos(x[1]) : 0.0;
  });
  CHECK(max_abs_diff(grad(s, Backend::Spectral), want_grad) <= 1e-14);

  // curl_2 (-sin x2, 0) = cos x2 (single pair (1,2))
  Field r = sample_field(g, FieldKind::Vector, 2, 1, [](int c, const double* x) {
    return c == 0 ? -std::sin(x[1]) : 0.0;
  });
  Field curl2 = curl_n(r, Backend::Spectral);
  REQUIRE(curl2.kind() == FieldKind::Cross);
  REQUIRE(curl2.rows() == 1);
  Field want_curl = sample_field(g, FieldKind::Cross, 1, 1, [](int, const double* x) {
    return std::cos(x[1]);
  });
  CHECK(max_abs_diff(curl2, want_curl) <= 1e-14);

  // laplacian (sin x1, 0) = (-sin x1, 0), then inverted back
  Field lap = laplacian(a, Backend::Spectral);
  Field want_lap = sample_field(g, FieldKind::Vector, 2, 1, [](int c, const double* x) {
    return c == 0 ? -std::sin(x[0]) : 0.0;
  });
  CHECK(max_abs_diff(lap, want_lap) <= 1e-14);
  CHECK(max_abs_diff(inverse_laplacian(lap), a) <= 1e-13);

  // derivative of (sin x2, cos x1): rows are gradients of the components
  Field v = sample_field(g, FieldKind::Vector, 2, 1, [](int c, const double* x) {
    return c == 0 ? std::sin(x[1]) : std::cos(x[0]);
  });
  Field D = derivative(v, Backend::Spectral);
  REQUIRE(D.kind() == FieldKind::Matrix);
  REQUIRE(D.rows() == 2);
  REQUIRE(D.cols() == 2);
  Field want_D = sample_field(g, FieldKind::Matrix, 2, 2, [](int comp, const double* x) {
    switch (comp) {  // (r, c) flattened row-major: d_c a_r
      case 1: return std::cos(x[1]);   // d2 a1
      case 2: return -std::sin(x[0]);  // d1 a2
      default: return 0.0;
    }
  });
  CHECK(max_abs_diff(D, want_D) <= 1e-14);
}

TEST_CASE("adjoint curl in three dimensions matches its component formula") {
  Grid g = grid3();
  // For g = (g1, g2, g3) on pairs (1,2),(1,3),(2,3):
  // adj(g) = (-d2 g1 - d3 g2, d1 g1 - d3 g3, d1 g2 + d2 g3).
  Field gf = sample_field(g, FieldKind::Cross, 3, 1, [](int c, const double* x) {
    if (c == 0) return std::sin(x[1]);
    if (c == 1) return std::cos(x[2]);
    return std::sin(x[0]);
  });
  Field adj = adjoint_curl(gf, Backend::Spectral);
  // With g1 = sin x2, g2 = cos x3, g3 = sin x1:
  //   comp1 = -d2 sin x2 - d3 cos x3 = -cos x2 + sin x3
  //   comp2 =  d1 sin x2 - d3 sin x1 = 0
  //   comp3 =  d1 cos x3 + d2 sin x1 = 0
  Field want = sample_field(g, FieldKind::Vector, 3, 1, [](int c, const double* x) {
    if (c == 0) return -std::cos(x[1]) + std::sin(x[2]);
    return 0.0;
  });
  CHECK(max_abs_diff(adj, want) <= 1e-14);
}

TEST_CASE("single harmonics: every first-order operator equals its symbol") {
  Rng rng(2024);
  for (int n : {2, 3, 4}) {
    Grid g(n, std::vector<int>(n, n == 4 ? 8 : 12));
    const int N = cross_dim(n);
    std::vector<int> k(n);
    for (int d = 0; d < n; ++d) k[d] = (d % 2 == 0) ? 2 : -3;
    const Vec kv = to_vec(k);
    const Mat K = cross_matrix(kv);

    // Vector input: divergence, curl and the full derivative.
    Eigen::VectorXcd z = random_complex(rng, n);
    Field a = mode_field(g, FieldKind::Vector, n, 1, z, k);

    Eigen::VectorXcd div_w(1);
    div_w[0] = std::complex<double>(0, 1) * (kv.cast<std::complex<double>>().dot(z));
    // Eigen's dot conjugates the left factor; kv is real so this is <k, z>.
    Field want_div = mode_field(g, FieldKind::Scalar, 1, 1, div_w, k);
    CHECK(max_abs_diff(divergence(a, Backend::Spectral), want_div) <= 1e-12);

    Eigen::VectorXcd curl_w =
        std::complex<double>(0, 1) * (K.cast<std::complex<double>>() * z);
    Field want_curl = mode_field(g, FieldKind::Cross, N, 1, curl_w, k);
    CHECK(max_abs_diff(curl_n(a, Backend::Spectral), want_curl) <= 1e-12);

    Eigen::VectorXcd deriv_w(n * n);  // (r, c) row-major: i k_c z_r
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        deriv_w[r * n + c] = std::complex<double>(0, 1) * kv[c] * z[r];
    Field want_deriv = mode_field(g, FieldKind::Matrix, n, n, deriv_w, k);
    CHECK(max_abs_diff(derivative(a, Backend::Spectral), want_deriv) <= 1e-12);

    // Scalar input: gradient.
    Eigen::VectorXcd zs = random_complex(rng, 1);
    Field s = mode_field(g, FieldKind::Scalar, 1, 1, zs, k);
    Eigen::VectorXcd grad_w(n);
    for (int d = 0; d < n; ++d) grad_w[d] = std::complex<double>(0, 1) * kv[d] * zs[0];
    Field want_grad = mode_field(g, FieldKind::Vector, n, 1, grad_w, k);
    CHECK(max_abs_diff(grad(s, Backend::Spectral), want_grad) <= 1e-12);

    // Cross input: the adjoint curl is the transposed symbol.
    Eigen::VectorXcd zc = random_complex(rng, N);
    Field c = mode_field(g, FieldKind::Cross, N, 1, zc, k);
    Eigen::VectorXcd adj_w =
        std::complex<double>(0, 1) * (K.transpose().cast<std::complex<double>>() * zc);
    Field want_adj = mode_field(g, FieldKind::Vector, n, 1, adj_w, k);
    CHECK(max_abs_diff(adjoint_curl(c, Backend::Spectral), want_adj) <= 1e-12);

    // Laplacian multiplies by -|k|^2.
    Eigen::VectorXcd lap_w = -kv.squaredNorm() * z;
    Field want_lap = mode_field(g, FieldKind::Vector, n, 1, lap_w, k);
    CHECK(max_abs_diff(laplacian(a, Backend::Spectral), want_lap) <= 5e-12);
  }
}

TEST_CASE("matrix operators act row-wise") {
  Grid g = grid3();
  Rng rng(5);
  Field r0 = random_band_limited(g, FieldKind::Vector, 3, 1, 2, 100);
  Field r1 = random_band_limited(g, FieldKind::Vector, 3, 1, 2, 101);
  const std::size_t v = g.volume();
  const int n = 3, N = 3;

  Field P(g, FieldKind::Matrix, 2, n);
  for (int c = 0; c < n; ++c) {
    std::memcpy(P.component(0, c), r0.component(c), v * sizeof(double));
    std::memcpy(P.component(1, c), r1.component(c), v * sizeof(double));
  }

  Field div0 = divergence(r0, Backend::Spectral);
  Field div1 = divergence(r1, Backend::Spectral);
  Field mdiv = matrix_divergence(P, Backend::Spectral);
  REQUIRE(mdiv.components() == 2);
  double worst = 0.0;
  for (std::size_t i = 0; i < v; ++i) {
    worst = std::max(worst, std::abs(mdiv.component(0)[i] - div0.data()[i]));
    worst = std::max(worst, std::abs(mdiv.component(1)[i] - div1.data()[i]));
  }
  CHECK(worst <= 1e-13);

  Field curl0 = curl_n(r0, Backend::Spectral);
  Field curl1 = curl_n(r1, Backend::Spectral);
  Field mcurl = matrix_curl(P, Backend::Spectral);
  REQUIRE(mcurl.rows() == 2);
  REQUIRE(mcurl.cols() == N);
  worst = 0.0;
  for (int k = 0; k < N; ++k)
    for (std::size_t i = 0; i < v; ++i) {
      worst = std::max(worst, std::abs(mcurl.component(0, k)[i] - curl0.component(k)[i]));
      worst = std::max(worst, std::abs(mcurl.component(1, k)[i] - curl1.component(k)[i]));
    }

  CHECK(worst <= 1e-13);

  // matrix_adjoint undoes matrix_curl of a derivative-free probe the same
  // row-wise way: check against adjoint_curl row by row.
  Field W(g, FieldKind::Matrix, 2, N);
  Field c0 = random_band_limited(g, FieldKind::Cross, N, 1, 2, 102);
  Field c1 = random_band_limited(g, FieldKind::Cross, N, 1, 2, 103);
  for (int k = 0; k < N; ++k) {
    std::memcpy(W.component(0, k), c0.component(k), v * sizeof(double));
    std::memcpy(W.component(1, k), c1.component(k), v * sizeof(double));
  }
  Field adj0 = adjoint_curl(c0, Backend::Spectral);
  Field adj1 = adjoint_curl(c1, Backend::Spectral);
  Field madj = matrix_adjoint(W, Backend::Spectral);
  REQUIRE(madj.rows() == 2);
  REQUIRE(madj.cols() == n);
  worst = 0.0;
  for (int c = 0; c < n; ++c)
    for (std::size_t i = 0; i < v; ++i) {
      worst = std::max(worst, std::abs(madj.component(0, c)[i] - adj0.component(c)[i]));
      worst = std::max(worst, std::abs(madj.component(1, c)[i] - adj1.component(c)[i]));
    }
  CHECK(worst <= 1e-13);
}

TEST_CASE("second-order compositions: curvature identity for a scalar weight") {
  // inc-sandwich of zeta collapses to (lap zeta) Id - Hess zeta.
  Grid g = grid2();
  Field zeta = sample_scalar(g, [](const double* x) { return std::sin(x[0]); });
  Field got = inc_sandwich_scalar(zeta, Backend::Spectral);
  REQUIRE(got.rows() == 2);
  REQUIRE(got.cols() == 2);
  Field want = sample_field(g, FieldKind::Matrix, 2, 2, [](int comp, const double* x) {
    return comp == 3 ? -std::sin(x[0]) : 0.0;  // diag(0, -sin x1)
  });
  CHECK(max_abs_diff(got, want) <= 1e-13);

  // Same identity on a random band-limited weight, composed from scratch.
  Field z = random_band_limited(g, FieldKind::Scalar, 1, 1, 4, 7);
  Field lap = laplacian(z, Backend::Spectral);
  Field hess = derivative(grad(z, Backend::Spectral), Backend::Spectral);
  Field closed(g, FieldKind::Matrix, 2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      double* dst = closed.component(r, c);
      const double* h = hess.component(r, c);
      const double* l = lap.data();
      for (std::size_t i = 0; i < g.volume(); ++i)
        dst[i] = (r == c ? l[i] : 0.0) - h[i];
    }
  CHECK(max_abs_diff(inc_sandwich_scalar(z, Backend::Spectral), closed) <= 1e-11);
}

TEST_CASE("kernel identities vanish spectrally for n = 2..5") {
  struct Setup {
    int n;
    std::vector<int> shape;
    int band;
  };
  for (const Setup& s : {Setup{2, {16, 16}, 3}, Setup{3, {8, 8, 8}, 2},
                         Setup{4, {6, 6, 6, 6}, 1}, Setup{5, {4, 4, 4, 4, 4}, 1}}) {
    auto res = kernel_suite(s.n, s.shape, Backend::Spectral, s.band, kDefaultSeed);
    CHECK(res.size() == 9);
    for (const auto& r : res) {
      INFO("check ", r.name, " at n=", s.n);
      CHECK(r.value <= 1e-10);
    }
  }
}

TEST_CASE("centered differences keep the structural kernels exact") {
  auto res = kernel_suite(2, {16, 16}, Backend::Central2, 3, kDefaultSeed);
  bool saw_inexact = false;
  for (const auto& r : res) {
    INFO("check ", r.name);
    if (kernel_check_is_exact(r.name)) {
      CHECK(r.value <= 1e-12);
    } else {
      // The splitting identities carry a genuine O(h^2) consistency error;
      // if these ever read as zero the exactness list is mislabeled.
      CHECK(r.value > 1e-6);
      saw_inexact = true;
    }
  }
  CHECK(saw_inexact);
}

TEST_CASE("splitting residual drops fourfold under refinement") {
  const double ratio = laplacian_refinement_ratio(2, {16, 16}, 1, kDefaultSeed);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("centered stencil eigenvalues on pure harmonics") {
  Grid g = grid2(16);
  const double h = g.spacing(0);
  Field f = sample_scalar(g, [](const double* x) { return std::sin(x[0]); });

  // First difference: sin(h)/h cos(x); compact Laplacian: -(4/h^2) sin^2(h/2).
  Field df = partial(f, 0, Backend::Central2);
  const double c1 = std::sin(h) / h;
  Field want1 = sample_scalar(g, [&](const double* x) { return c1 * std::cos(x[0]); });
  CHECK(max_abs_diff(df, want1) <= 1e-13);

  Field lap = laplacian(f, Backend::Central2);
  const double c2 = -4.0 / (h * h) * std::sin(h / 2) * std::sin(h / 2);
  Field want2 = sample_scalar(g, [&](const double* x) { return c2 * std::sin(x[0]); });
  CHECK(max_abs_diff(lap, want2) <= 1e-13);
}

TEST_CASE("skew matrix fields biject with cross fields") {
  Grid g = grid2();
  Field c = random_band_limited(g, FieldKind::Cross, 1, 1, 3, 11);
  Field A = skew_field_from_cross(c);
  REQUIRE(A.rows() == 2);
  REQUIRE(A.cols() == 2);
  CHECK(max_abs_diff(cross_field_from_skew(A), c) == 0.0);
  CHECK(linf_norm(sym_part(A)) == 0.0);
}

TEST_CASE("axial 3-D conventions and the derivative round trip") {
  Grid g = grid3();

  // Anti uses the classic axial embedding.
  Field a = sample_field(g, FieldKind::Vector, 3, 1, [](int c, const double* x) {
    return c == 0 ? std::sin(x[1]) : (c == 1 ? std::cos(x[2]) : 2.0);
  });
  Field A = nye_anti(a);
  REQUIRE(A.rows() == 3);
  REQUIRE(A.cols() == 3);
  const std::size_t probe = 7;
  double a1 = a.component(0)[probe], a2 = a.component(1)[probe], a3 = a.component(2)[probe];
  CHECK(A.component(0, 1)[probe] == -a3);
  CHECK(A.component(0, 2)[probe] == a2);
  CHECK(A.component(1, 2)[probe] == -a1);
  CHECK(A.component(1, 0)[probe] == a3);
  CHECK(max_abs_diff(nye_vee(A), a) == 0.0);

  // Classic row curl on a single harmonic row.
  Field P(g, FieldKind::Matrix, 1, 3);
  Field s = sample_scalar(g, [](const double* x) { return std::sin(x[1]); });
  std::memcpy(P.component(0, 2), s.data(), g.volume() * sizeof(double));
  Field C = classic_curl_rows(P, Backend::Spectral);
  Field wantC = sample_field(g, FieldKind::Matrix, 1, 3, [](int comp, const double* x) {
    return comp == 0 ? std::cos(x[1]) : 0.0;  // (d2 P3 - d3 P2, ...) = (cos x2, 0, 0)
  });
  CHECK(max_abs_diff(C, wantC) <= 1e-14);

  // Derivative recovery through the curl of the skew embedding.
  Field v = random_band_limited(g, FieldKind::Vector, 3, 1, 2, 2024);
  Field F = nye_curl_of_skew(v, Backend::Spectral);
  Field R = nye_recover_derivative(F);
  Field D = derivative(v, Backend::Spectral);
  CHECK(max_abs_diff(R, D) <= 1e-12);
}

TEST_CASE("mode determinacy of the derivative recovery in higher dimensions") {
  CHECK(nye_determinacy_mode_residual(3, {1, 2, 3}) <= 1e-12);
  CHECK(nye_determinacy_mode_residual(4, {1, 0, -2, 3}) <= 1e-12);
  CHECK(nye_determinacy_max_residual(2, {4, 4}) <= 1e-12);
  CHECK(nye_determinacy_max_residual(3, {4, 4, 4}) <= 1e-10);
  CHECK(nye_determinacy_max_residual(4, {4, 4, 4, 4}) <= 1e-8);
}

TEST_CASE("symbol ellipticity across operators and dimensions") {
  // grad: the symbol is b itself, an isometry on scalars.
  auto rg = ellipticity_report(FirstOrderOp::Grad, 3, 200, kDefaultSeed);
  CHECK(rg.elliptic);
  CHECK(rg.min_sigma == doctest::Approx(1.0).epsilon(1e-12));

  // div: symbol b^T has the whole hyperplane b-perp as kernel.
  auto rd = ellipticity_report(FirstOrderOp::Div, 3, 200, kDefaultSeed);
  CHECK_FALSE(rd.elliptic);
  CHECK(rd.witness_residual <= 1e-13);

  // curl: kernel is the span of b.
  auto rc = ellipticity_report(FirstOrderOp::CurlN, 4, 200, kDefaultSeed);
  CHECK_FALSE(rc.elliptic);
  CHECK(std::abs(std::abs(rc.witness.dot(rc.witness_b)) - 1.0) <= 1e-10);

  // adjoint curl: elliptic only in the plane.
  auto r2 = ellipticity_report(FirstOrderOp::AdjointCurl, 2, 1000, kDefaultSeed);
  CHECK(r2.elliptic);
  CHECK(r2.min_sigma >= 1.0 - 1e-12);
  for (int n : {3, 4, 5}) {
    auto rn = ellipticity_report(FirstOrderOp::AdjointCurl, n, 200, kDefaultSeed);
    CHECK_FALSE(rn.elliptic);
    CHECK(rn.witness_residual <= 1e-13);
  }

  // In three dimensions the kernel witness is (b3, -b2, b1) up to sign.
  auto r3 = ellipticity_report(FirstOrderOp::AdjointCurl, 3, 50, kDefaultSeed);
  Vec expect(3);
  expect << r3.witness_b[2], -r3.witness_b[1], r3.witness_b[0];
  expect.normalize();
  CHECK(std::abs(std::abs(r3.witness.dot(expect)) - 1.0) <= 1e-12);
}

TEST_CASE("operator preconditions surface as typed errors") {
  Grid codd(2, {6, 5});
  Field fodd = Field::scalar(codd);
  CHECK_THROWS_AS(grad(fodd, Backend::Spectral), ConfigError);
  CHECK_NOTHROW(grad(fodd, Backend::Central2));

  Grid g = grid2();
  Field s = Field::scalar(g);
  CHECK_THROWS_AS(divergence(s, Backend::Spectral), DomainError);
  CHECK_THROWS_AS(curl_n(s, Backend::Spectral), DomainError);

  Field biased = sample_scalar(g, [](const double*) { return 1.0; });
  CHECK_THROWS_AS(inverse_laplacian(biased), PreconditionError);
}

TEST_CASE("kernel suite is deterministic within a process") {
  auto a = kernel_suite(2, {16, 16}, Backend::Spectral, 3, 9);
  auto b = kernel_suite(2, {16, 16}, Backend::Spectral, 3, 9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].value == b[i].value);
  }
}
