#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "core/algebra.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/suites.hpp"

using namespace crossn;

namespace {
double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}
}  // namespace

TEST_CASE("pair maps agree with direct enumeration") {
  for (int n = 2; n <= 12; ++n) {
    int k = 0;
    for (int j = 2; j <= n; ++j) {
      for (int i = 1; i < j; ++i) {
        ++k;
        CHECK(pair_index(n, i, j) == k);
        auto [pi, pj] = index_pair(n, k);
        CHECK(pi == i);
        CHECK(pj == j);
      }
    }
    CHECK(k == cross_dim(n));
  }
  CHECK(pair_index(4, 2, 4) == 5);
  CHECK(pair_index(5, 3, 5) == 9);
  CHECK(dim_from_cross_len(1) == 2);
  CHECK(dim_from_cross_len(6) == 4);
}

TEST_CASE("pair maps reject out-of-domain input") {
  CHECK_THROWS_AS(cross_dim(1), DomainError);
  CHECK_THROWS_AS(pair_index(3, 2, 2), DomainError);
  CHECK_THROWS_AS(pair_index(3, 0, 2), DomainError);
  CHECK_THROWS_AS(pair_index(3, 1, 4), DomainError);
  CHECK_THROWS_AS(index_pair(3, 0), DomainError);
  CHECK_THROWS_AS(index_pair(3, 4), DomainError);
  CHECK_THROWS_AS(dim_from_cross_len(4), DomainError);
}

TEST_CASE("cross product fixed values") {
  Vec a2(2), b2(2);
  a2 << 1, 2;
  b2 << 3, 4;
  Vec c2 = cross(a2, b2);
  REQUIRE(c2.size() == 1);
  CHECK(c2(0) == -2.0);

  Vec c3 = cross(vec3(1, 2, 3), vec3(4, 5, 6));
  REQUIRE(c3.size() == 3);
  CHECK(c3(0) == -3.0);  // pair (1,2)
  CHECK(c3(1) == -6.0);  // pair (1,3)
  CHECK(c3(2) == -3.0);  // pair (2,3)

  Vec a4(4), b4(4);
  a4 << 1, 2, 3, 4;
  b4 << 5, 6, 7, 8;
  Vec c4 = cross(a4, b4);
  Vec want(6);
  want << -4, -8, -4, -12, -8, -4;
  CHECK(max_abs(Vec(c4 - want)) == 0.0);

  CHECK_THROWS_AS(cross(a4, b2), DomainError);
}

TEST_CASE("recursion, component formula and matrix application coincide") {
  Rng rng(7);
  for (int n = 2; n <= 16; ++n) {
    for (int t = 0; t < 20; ++t) {
      Vec a = rng.normal_vector(n);
      Vec b = rng.normal_vector(n);
      Vec via_recursion = cross(a, b);
      Vec via_formula = cross_oracle(a, b);
      // The recursion reorders nothing arithmetic: both evaluate
      // fl(a_i b_j) - fl(a_j b_i) componentwise, so equality is exact.
      CHECK(max_abs(Vec(via_recursion - via_formula)) == 0.0);
      double scale = a.norm() * b.norm();
      CHECK(max_abs(Vec(cross_matrix(a) * b - via_formula)) <= 1e-15 * scale);
    }
  }
}

TEST_CASE("cross matrix layout and spectrum") {
  Vec a = vec3(1, 2, 3);
  Mat M = cross_matrix(a);
  Mat want(3, 3);
  want << -2, 1, 0,
          -3, 0, 1,
           0, -3, 2;
  CHECK(max_abs(Mat(M - want)) == 0.0);

  // Two entries per row: +a_i at column j, -a_j at column i for row (i, j).
  Rng rng(11);
  for (int n : {2, 5, 9}) {
    Vec v = rng.normal_vector(n);
    Mat C = cross_matrix(v);
    REQUIRE(C.rows() == cross_dim(n));
    REQUIRE(C.cols() == n);
    for (int k = 1; k <= cross_dim(n); ++k) {
      auto [i, j] = index_pair(n, k);
      CHECK(C(k - 1, j - 1) == v(i - 1));
      CHECK(C(k - 1, i - 1) == -v(j - 1));
    }
    CHECK(max_abs(Mat(cross_matrix_sparse(v).toDense() - C)) == 0.0);

    // Nonzero singular values all equal |v|: the matrix is |v| times an
    // isometry on the orthogonal complement of v.
    Eigen::JacobiSVD<Mat> svd(C);
    const auto& s = svd.singularValues();
    for (int d = 0; d < n - 1; ++d) CHECK(s(d) == doctest::Approx(v.norm()).epsilon(1e-13));
    CHECK(s(n - 1) <= 1e-13 * v.norm());
  }
}

TEST_CASE("skew matrices biject with cross vectors") {
  Rng rng(13);
  for (int n : {2, 3, 4, 7}) {
    const int N = cross_dim(n);
    Vec v = rng.normal_vector(N);
    SkewMatrix S = SkewMatrix::from_vector(v);
    Mat A = S.dense();
    CHECK(max_abs(Mat(A + A.transpose())) == 0.0);
    for (int k = 1; k <= N; ++k) {
      auto [i, j] = index_pair(n, k);
      CHECK(A(i - 1, j - 1) == v(k - 1));
    }
    CHECK(max_abs(Vec(SkewMatrix::from_dense(A).to_vector() - v)) == 0.0);

    // The skew matrix of a cross product is the commutator of dyads.
    Vec a = rng.normal_vector(n);
    Vec b = rng.normal_vector(n);
    Mat comm = a * b.transpose() - b * a.transpose();
    CHECK(max_abs(Mat(SkewMatrix(n, cross(a, b)).dense() - comm)) <=
          1e-14 * a.norm() * b.norm());
  }
  Mat notskew = Mat::Identity(3, 3);
  CHECK_THROWS_AS(SkewMatrix::from_dense(notskew), DomainError);
}

TEST_CASE("triple product expansion") {
  // [[e1]]^T (e1 x e2) = e2.
  Vec e1 = vec3(1, 0, 0);
  Vec e2 = vec3(0, 1, 0);
  Vec got = grassmann_triple(e1, cross(e1, e2));
  CHECK(max_abs(Vec(got - e2)) == 0.0);

  Rng rng(17);
  for (int n : {2, 3, 5, 8}) {
    Vec a = rng.normal_vector(n), b = rng.normal_vector(n), c = rng.normal_vector(n);
    Vec g = cross(b, c);
    double scale = a.norm() * b.norm() * c.norm();
    CHECK(max_abs(Vec(grassmann_triple(a, g) - cross_matrix(a).transpose() * g)) <=
          1e-14 * scale);
    CHECK(max_abs(Vec(grassmann_triple(a, g) - (a.dot(b) * c - a.dot(c) * b))) <=
          1e-13 * scale);
    CHECK(max_abs(jacobi_sum(a, b, c)) <= 1e-13 * scale);
  }
}

TEST_CASE("product of two cross matrices") {
  Mat R = room_product(vec3(1, 2, 3), vec3(4, 5, 6));
  Mat want(3, 3);
  want << 28, -8, -12,
          -5, 22, -15,
          -6, -12, 14;
  CHECK(max_abs(Mat(R - want)) == 0.0);

  Rng rng(19);
  for (int n : {2, 3, 4, 6}) {
    Vec a = rng.normal_vector(n), b = rng.normal_vector(n);
    double scale = a.norm() * b.norm();
    Mat room = room_product(a, b);
    Mat closed = b.dot(a) * Mat::Identity(n, n) - b * a.transpose();
    CHECK(max_abs(Mat(room - closed)) <= 1e-13 * scale);
    CHECK(room.trace() == doctest::Approx((n - 1) * a.dot(b)).epsilon(1e-12));
    CHECK(max_abs(Mat(dyad_from_room(a, b) - b * a.transpose())) <= 1e-13 * scale);
  }
}

TEST_CASE("row-wise and column-wise matrix cross products") {
  Mat P(2, 2);
  P << 1, 2,
       3, 4;
  Vec b(2);
  b << 5, 6;
  Mat R = cross_right(P, b);
  REQUIRE(R.rows() == 2);
  REQUIRE(R.cols() == 1);
  CHECK(R(0, 0) == -4.0);
  CHECK(R(1, 0) == -2.0);

  Rng rng(23);
  for (int n : {2, 3, 5}) {
    const int N = cross_dim(n);
    Mat Q = rng.normal_matrix(4, n);
    Vec v = rng.normal_vector(n);
    Mat right = cross_right(Q, v);
    REQUIRE(right.cols() == N);
    for (int r = 0; r < 4; ++r) {
      Vec row = Q.row(r).transpose();
      CHECK(max_abs(Vec(right.row(r).transpose() - cross(row, v))) <=
            1e-14 * row.norm() * v.norm());
    }
    Mat B = rng.normal_matrix(n, 3);
    Mat left = cross_left(v, B);
    REQUIRE(left.rows() == N);
    for (int c = 0; c < 3; ++c) {
      CHECK(max_abs(Vec(left.col(c) - cross(v, Vec(B.col(c))))) <=
            1e-14 * v.norm() * B.col(c).norm());
    }
  }
}

TEST_CASE("cross of a cross matrix with a vector") {
  // n = 2: [[a]] x b is the 1 x 1 matrix -<a, b>.
  Vec a(2), b(2);
  a << 1, 2;
  b << 3, 4;
  Mat M = matrix_cross_block(a, b);
  REQUIRE(M.rows() == 1);
  REQUIRE(M.cols() == 1);
  CHECK(M(0, 0) == -11.0);

  Rng rng(29);
  for (int n : {2, 3, 4}) {
    Vec x = rng.normal_vector(n), y = rng.normal_vector(n);
    CHECK(max_abs(Mat(matrix_cross_block(x, y) - cross_right(cross_matrix(x), y))) == 0.0);
  }
}

TEST_CASE("simultaneous two-sided cross transports symmetry") {
  Rng rng(31);
  for (int n : {2, 3, 4, 5}) {
    Vec b = rng.normal_vector(n);
    Mat P = rng.normal_matrix(n, n);
    Mat S = 0.5 * (P + P.transpose());
    Mat W = 0.5 * (P - P.transpose());
    double scale = b.squaredNorm() * max_abs(P);
    Mat symd = simultaneous_cross(b, S);
    Mat skewd = simultaneous_cross(b, W);
    CHECK(max_abs(Mat(symd - symd.transpose())) <= 1e-13 * scale);
    CHECK(max_abs(Mat(skewd + skewd.transpose())) <= 1e-13 * scale);
    Mat direct = cross_matrix(b) * P * cross_matrix(-b).transpose();
    CHECK(max_abs(Mat(simultaneous_cross(b, P) - direct)) <= 1e-13 * scale);
  }
}

TEST_CASE("sandwich with the identity weight") {
  Vec b = vec3(1, 2, 3);
  Mat got = sandwich(b, Mat::Identity(3, 3));
  Mat want(3, 3);
  want << 13, -2, -3,
          -2, 10, -6,
          -3, -6, 5;
  CHECK(max_abs(Mat(got - want)) == 0.0);

  Rng rng(37);
  for (int n : {2, 4, 6}) {
    const int N = cross_dim(n);
    Vec v = rng.normal_vector(n);
    Mat closed = v.squaredNorm() * Mat::Identity(n, n) - v * v.transpose();
    CHECK(max_abs(Mat(sandwich(v, Mat::Identity(N, N)) - closed)) <=
          1e-13 * v.squaredNorm());
  }
}

TEST_CASE("identity suite stays at round-off across dimensions") {
  for (int n : {2, 3, 4, 5, 6}) {
    auto res = identity_suite(n, 200, kDefaultSeed);
    CHECK(res.size() == 16);
    for (const auto& r : res) {
      INFO("identity ", r.name, " at n=", n);
      CHECK(r.value <= 1e-12);
    }
    CHECK(oracle_suite(n, 200, kDefaultSeed) <= 1e-14);
  }
  CHECK_THROWS_AS(identity_suite(1, 10, 0), DomainError);
  CHECK_THROWS_AS(identity_suite(65, 10, 0), DomainError);
}

TEST_CASE("identity suite is deterministic in the seed") {
  auto a = identity_suite(5, 50, 12345);
  auto b = identity_suite(5, 50, 12345);
  auto c = identity_suite(5, 50, 54321);
  REQUIRE(a.size() == b.size());
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].value == b[i].value);
    CHECK(a[i].name == b[i].name);
    if (a[i].value != c[i].value) any_diff = true;
  }
  CHECK(any_diff);
}
