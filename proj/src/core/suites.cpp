#include "core/suites.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/synth.hpp"

namespace crossn {

namespace {

double rel(double num, double scale) { return num / std::max(scale, 1e-300); }

double linf(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
double linf(const Vec& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<NamedValue> identity_suite(int n, int trials, std::uint64_t seed) {
  if (n < 2 || n > 64) throw DomainError("identity_suite: n must lie in [2, 64]");
  if (trials < 1) throw DomainError("identity_suite: trials must be >= 1");
  const int N = cross_dim(n);
  const Mat Id = Mat::Identity(n, n);

  std::vector<NamedValue> out = {
      {"lagrange", 0}, {"parallelogram_area", 0}, {"grassmann_vector", 0},
      {"grassmann_skew", 0}, {"jacobi", 0}, {"room", 0}, {"room_self", 0},
      {"room_trace", 0}, {"room_dyad_converse", 0}, {"room_commutator", 0},
      {"cross_skew_link", 0}, {"dyadic_cross", 0}, {"dyadic_cross_annihilation", 0},
      {"dyadic_cross_dyad", 0}, {"simultaneous_cross_symmetry", 0}, {"sandwich_identity", 0}};
  auto& r = out;

  // One stream per dimension keeps the draws independent across the sweep.
  Rng rng(seed, static_cast<std::uint64_t>(n));
  for (int t = 0; t < trials; ++t) {
    const Vec a = rng.normal_vector(n);
    const Vec b = rng.normal_vector(n);
    const Vec c = rng.normal_vector(n);
    const Vec d = rng.normal_vector(n);
    const Mat P = rng.normal_matrix(n, n);
    const double na = a.norm(), nb = b.norm(), nc = c.norm(), nd = d.norm();

    const Vec ab = cross(a, b);
    const Vec bc = cross(b, c);

    auto track = [&](int idx, double v) { r[idx].value = std::max(r[idx].value, v); };

    // <a x b, c x d> = <a,c><b,d> - <a,d><b,c>
    track(0, rel(std::abs(ab.dot(cross(c, d)) - (a.dot(c) * b.dot(d) - a.dot(d) * b.dot(c))),
                 na * nb * nc * nd));
    // |a x b|^2 = |a|^2 |b|^2 - <a,b>^2
    track(1, rel(std::abs(ab.squaredNorm() - (na * na * nb * nb - std::pow(a.dot(b), 2))),
                 na * na * nb * nb));
    // [[a]]^T (b x c) = <a,b> c - <a,c> b
    const Vec trip = grassmann_triple(a, bc);
    track(2, rel(linf(Vec(trip - (a.dot(b) * c - a.dot(c) * b))), na * nb * nc));
    // ... = -A_n(b x c) a
    track(3, rel(linf(Vec(trip + SkewMatrix::from_vector(bc).dense() * a)), na * nb * nc));
    // cyclic triple sum vanishes
    track(4, rel(linf(jacobi_sum(a, b, c)), na * nb * nc));
    // [[a]]^T [[b]] = <b,a> Id - b (x) a
    const Mat room = room_product(a, b);
    track(5, rel(linf(Mat(room - (b.dot(a) * Id - b * a.transpose()))), na * nb));
    // the self case
    track(6, rel(linf(Mat(room_product(b, b) - (nb * nb * Id - b * b.transpose()))), nb * nb));
    // tr [[a]]^T [[b]] = (n-1) <a,b>
    track(7, rel(std::abs(room.trace() - (n - 1) * a.dot(b)), (n - 1) * na * nb));
    // dyad recovery from the product
    track(8, rel(linf(Mat(dyad_from_room(a, b) - b * a.transpose())), na * nb));
    // [[a]]^T [[b]] - [[b]]^T [[a]] = A_n(a x b)
    track(9, rel(linf(Mat(room - room_product(b, a) - SkewMatrix::from_vector(ab).dense())),
                 na * nb));
    // A_n(a x b) = a (x) b - b (x) a
    track(10, rel(linf(Mat(SkewMatrix::from_vector(ab).dense() -
                           (a * b.transpose() - b * a.transpose()))),
                  na * nb));
    // (a (x) b) x c = a (x) (b x c)
    track(11, rel(linf(Mat(cross_right(a * b.transpose(), c) - a * bc.transpose())),
                  na * nb * nc));
    // (a (x) b) x b = 0
    track(12, rel(linf(Mat(cross_right(a * b.transpose(), b))), na * nb * nb));
    // (b (x) a) x b = b (x) (a x b)
    track(13, rel(linf(Mat(cross_right(b * a.transpose(), b) - b * ab.transpose())),
                  na * nb * nb));
    // b x sym(P) x b = sym(b x P x b), same for the skew part
    const Mat sim = simultaneous_cross(b, P);
    const Mat sym_t = simultaneous_cross(b, Mat(0.5 * (P + P.transpose()))) -
                      0.5 * (sim + sim.transpose());
    const Mat skew_t = simultaneous_cross(b, Mat(0.5 * (P - P.transpose()))) -
                       0.5 * (sim - sim.transpose());
    track(14, rel(std::max(linf(sym_t), linf(skew_t)), nb * nb * linf(P)));
    // [[b]]^T Id_N [[b]] = |b|^2 Id - b (x) b
    track(15, rel(linf(Mat(sandwich(b, Mat::Identity(N, N)) -
                           (nb * nb * Id - b * b.transpose()))),
                  nb * nb));
  }
  return out;
}

double oracle_suite(int n, int trials, std::uint64_t seed) {
  if (n < 2) throw DomainError("oracle_suite: n must be >= 2");
  Rng rng(seed, static_cast<std::uint64_t>(n) + (1ULL << 32));
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Vec a = rng.normal_vector(n);
    const Vec b = rng.normal_vector(n);
    const Vec v1 = cross(a, b);
    const Vec v2 = cross_oracle(a, b);
    const Vec v3 = cross_matrix(a) * b;
    const double scale = std::max(a.norm() * b.norm(), 1e-300);
    worst = std::max(worst, linf(Vec(v1 - v2)) / scale);
    worst = std::max(worst, linf(Vec(v1 - v3)) / scale);
  }
  return worst;
}

std::vector<NamedValue> kernel_suite(int n, const std::vector<int>& shape, Backend backend,
                                     int band, std::uint64_t seed) {
  if (n < 2) throw DomainError("kernel_suite: n must be >= 2");
  Grid grid(n, shape);
  const int N = cross_dim(n);
  // Independent unit-RMS fields, one stream per role.
  Field f = random_band_limited(grid, FieldKind::Scalar, 1, 1, band, Rng::mix(seed, 1));
  Field a = random_band_limited(grid, FieldKind::Vector, n, 1, band, Rng::mix(seed, 2));
  Field g = random_band_limited(grid, FieldKind::Cross, N, 1, band, Rng::mix(seed, 3));
  Field Q = random_band_limited(grid, FieldKind::Matrix, 2, n, band, Rng::mix(seed, 4));
  Field QQ = random_band_limited(grid, FieldKind::Matrix, 2, N, band, Rng::mix(seed, 5));

  std::vector<NamedValue> out;
  out.push_back({"curl_of_grad", linf_norm(curl_n(grad(f, backend), backend))});
  out.push_back({"div_of_adjoint_curl",
                 linf_norm(divergence(adjoint_curl(g, backend), backend))});
  out.push_back({"matrix_curl_of_derivative",
                 linf_norm(matrix_curl(derivative(a, backend), backend))});
  out.push_back({"inc_of_derivative", linf_norm(inc_n(derivative(a, backend), backend))});
  out.push_back({"vector_laplacian_split", vector_laplacian_split(a, backend).residual});
  out.push_back({"matrix_laplacian_split", matrix_laplacian_split(Q, backend).residual});
  out.push_back({"curl_adjoint_curl_laplacian", curl_adjoint_curl_residual(a, backend)});
  out.push_back({"parts_vector", parts_residual_vector(a, g, backend)});
  out.push_back({"parts_matrix", parts_residual_matrix(Q, QQ, backend)});
  return out;
}

bool kernel_check_is_exact(const std::string& name) {
  // The splitting checks compare against the backend Laplacian, which for
  // centered differences is the compact stencil: an O(h^2) gap, not a kernel
  // identity.  Everything else is operator algebra valid for any commuting
  // difference operators.
  return name != "vector_laplacian_split" && name != "matrix_laplacian_split" &&
         name != "curl_adjoint_curl_laplacian";
}

double laplacian_refinement_ratio(int n, const std::vector<int>& shape, int band,
                                  std::uint64_t seed) {
  std::vector<int> fine(shape);
  for (int& m : fine) m *= 2;
  Grid g1(n, shape), g2(n, fine);
  Field a1 = random_band_limited(g1, FieldKind::Vector, n, 1, band, Rng::mix(seed, 2));
  Field a2 = random_band_limited(g2, FieldKind::Vector, n, 1, band, Rng::mix(seed, 2));
  const double r1 = vector_laplacian_split(a1, Backend::Central2).residual;
  const double r2 = vector_laplacian_split(a2, Backend::Central2).residual;
  if (r2 <= 0.0) throw DomainError("laplacian_refinement_ratio: fine residual vanished");
  return r1 / r2;
}

DemoBases divcurl_demo_bases(const Grid& grid) {
  const int n = grid.n();
  if (n < 2) throw DomainError("divcurl_demo_bases: n must be >= 2");

  // Sine series with 1/m^2 coefficients: smooth, and its pairing against
  // sin(k x) under the weight 1 + cos x_1 is exactly
  // (2pi)^{n-1} pi (1/k^2 + 1/(2(k-1)^2) + 1/(2(k+1)^2)) per unit amplitude,
  // so the deviations decay like k^-2 -- visible far above round-off.  The
  // truncation stays below the Nyquist limit so the sampled series aliases
  // nothing and the pairing quadrature is exact.
  const int series_terms = std::min(40, grid.shape().at(0) / 2 - 1);
  auto series = [series_terms](double x) {
    double s = 0.0;
    for (int m = 1; m <= series_terms; ++m) s += std::sin(m * x) / (m * m);
    return s;
  };

  Field u = sample_field(grid, FieldKind::Vector, n, 1, [&](int comp, const double* x) {
    if (comp == 0) return series(x[0]);
    if (comp == 1) return 0.5 * std::cos(x[1]);
    return 0.0;
  });
  Field v = sample_field(grid, FieldKind::Vector, n, 1, [&](int comp, const double* x) {
    if (comp == 0) return std::sin(x[1]) / 3.0;
    if (comp == 1) return 0.5 * std::cos(x[1]);
    return 0.0;
  });
  Field phi = sample_scalar(grid, [](const double* x) { return 1.0 + std::cos(x[0]); });
  return {std::move(u), std::move(v), std::move(phi)};
}

DivCurlDemo divcurl_demo(int n, const std::vector<int>& shape, const std::vector<int>& k_values,
                         double amplitude, std::uint64_t seed) {
  if (n < 2) throw DomainError("divcurl_demo: n must be >= 2");
  Grid grid(n, shape);
  DemoBases bases = divcurl_demo_bases(grid);

  auto [fu, fv] = build_families(bases.u, bases.v, /*axis=*/1, amplitude, k_values);
  DivCurlDemo demo{std::move(bases.u), std::move(bases.v), std::move(bases.phi), {}, 0.0, 0.0};
  demo.report = weak_pairing(fu, fv, demo.phi);

  // Mean-free random field for the inverse-Laplacian commutation check.
  Field h = random_band_limited(grid, FieldKind::Vector, n, 1, Rng::mix(seed, 7));
  auto [rd, rc] = commutation_residuals(h);
  demo.commutation_div = rd;
  demo.commutation_curl = rc;
  return demo;
}

}  // namespace crossn
