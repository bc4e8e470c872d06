#include "core/algebra.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace crossn {

namespace {

void require_dim(const Vec& v, const char* name) {
  if (v.size() < 2)
    throw DomainError(std::string(name) + ": dimension must be >= 2, got " +
                      std::to_string(v.size()));
  if (!v.allFinite())
    throw DomainError(std::string(name) + ": non-finite entry");
}

void require_same_dim(const Vec& a, const Vec& b, const char* where) {
  if (a.size() != b.size())
    throw DomainError(std::string(where) + ": dimension mismatch " +
                      std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

void require_finite(const Mat& m, const char* name) {
  if (!m.allFinite())
    throw DomainError(std::string(name) + ": non-finite entry");
}

}  // namespace

int cross_dim(int n) {
  if (n < 2) throw DomainError("cross_dim: n must be >= 2, got " + std::to_string(n));
  return n * (n - 1) / 2;
}

int dim_from_cross_len(int len) {
  if (len < 1) throw DomainError("dim_from_cross_len: length must be >= 1");
  // n is the positive root of n^2 - n - 2 len = 0.
  int n = static_cast<int>(std::lround((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(len))) / 2.0));
  if (n < 2 || n * (n - 1) / 2 != len)
    throw DomainError("dim_from_cross_len: " + std::to_string(len) +
                      " is not of the form n(n-1)/2");
  return n;
}

int pair_index(int n, int i, int j) {
  cross_dim(n);
  if (i < 1 || j <= i || j > n)
    throw DomainError("pair_index: need 1 <= i < j <= n, got (" + std::to_string(i) +
                      ", " + std::to_string(j) + ") with n = " + std::to_string(n));
  return (j - 1) * (j - 2) / 2 + i;
}

std::pair<int, int> index_pair(int n, int k) {
  int N = cross_dim(n);
  if (k < 1 || k > N)
    throw DomainError("index_pair: k out of range [1, " + std::to_string(N) + "]: " +
                      std::to_string(k));
  // Largest j with (j-1)(j-2)/2 < k.
  int j = static_cast<int>((1.0 + std::sqrt(8.0 * static_cast<double>(k) - 7.0)) / 2.0) + 1;
  while ((j - 1) * (j - 2) / 2 >= k) --j;
  while (j * (j - 1) / 2 < k) ++j;
  int i = k - (j - 1) * (j - 2) / 2;
  return {i, j};
}

Vec cross(const Vec& a, const Vec& b) {
  require_dim(a, "cross: a");
  require_dim(b, "cross: b");
  require_same_dim(a, b, "cross");
  const int n = static_cast<int>(a.size());
  Vec out(cross_dim(n));
  if (n == 2) {
    out[0] = a[0] * b[1] - a[1] * b[0];
    return out;
  }
  out.head(cross_dim(n - 1)) = cross(a.head(n - 1), b.head(n - 1));
  out.tail(n - 1) = b[n - 1] * a.head(n - 1) - a[n - 1] * b.head(n - 1);
  return out;
}

Vec cross_oracle(const Vec& a, const Vec& b) {
  require_dim(a, "cross_oracle: a");
  require_dim(b, "cross_oracle: b");
  require_same_dim(a, b, "cross_oracle");
  const int n = static_cast<int>(a.size());
  Vec out(cross_dim(n));
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) out[k++] = a[i] * b[j] - a[j] * b[i];
  return out;
}

Mat cross_matrix(const Vec& a) {
  require_dim(a, "cross_matrix: a");
  const int n = static_cast<int>(a.size());
  Mat M = Mat::Zero(cross_dim(n), n);
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      M(k, j) = a[i];
      M(k, i) = -a[j];
    }
  return M;
}

Eigen::SparseMatrix<double> cross_matrix_sparse(const Vec& a) {
  require_dim(a, "cross_matrix_sparse: a");
  const int n = static_cast<int>(a.size());
  Eigen::SparseMatrix<double> M(cross_dim(n), n);
  M.reserve(Eigen::VectorXi::Constant(n, n - 1));
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      M.insert(k, j) = a[i];
      M.insert(k, i) = -a[j];
    }
  M.makeCompressed();
  return M;
}

SkewMatrix::SkewMatrix(int n, Vec upper) : n_(n), upper_(std::move(upper)) {
  if (upper_.size() != cross_dim(n))
    throw DomainError("SkewMatrix: upper triangle length " + std::to_string(upper_.size()) +
                      " does not match n = " + std::to_string(n));
}

SkewMatrix SkewMatrix::from_vector(const Vec& v) {
  int n = dim_from_cross_len(static_cast<int>(v.size()));
  return SkewMatrix(n, v);
}

SkewMatrix SkewMatrix::from_dense(const Mat& A, double tol) {
  if (A.rows() != A.cols() || A.rows() < 2)
    throw DomainError("SkewMatrix::from_dense: need square matrix of order >= 2");
  require_finite(A, "SkewMatrix::from_dense");
  const int n = static_cast<int>(A.rows());
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A + A.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw DomainError("SkewMatrix::from_dense: matrix is not skew-symmetric");
  Vec upper(cross_dim(n));
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) upper[k++] = A(i, j);
  return SkewMatrix(n, upper);
}

Mat SkewMatrix::dense() const {
  Mat A = Mat::Zero(n_, n_);
  int k = 0;
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      A(i, j) = upper_[k];
      A(j, i) = -upper_[k];
    }
  return A;
}

Vec grassmann_triple(const Vec& a, const Vec& g) {
  require_dim(a, "grassmann_triple: a");
  const int n = static_cast<int>(a.size());
  if (g.size() != cross_dim(n))
    throw DomainError("grassmann_triple: cross vector length " + std::to_string(g.size()) +
                      " does not match n = " + std::to_string(n));
  if (!g.allFinite()) throw DomainError("grassmann_triple: non-finite entry");
  // Accumulate [[a]]^T g from the two nonzeros of each row of [[a]].
  Vec out = Vec::Zero(n);
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      out[j] += a[i] * g[k];
      out[i] -= a[j] * g[k];
    }
  return out;
}

Vec jacobi_sum(const Vec& a, const Vec& b, const Vec& c) {
  return grassmann_triple(a, cross(b, c)) + grassmann_triple(b, cross(c, a)) +
         grassmann_triple(c, cross(a, b));
}

Mat room_product(const Vec& a, const Vec& b) {
  require_dim(a, "room_product: a");
  require_dim(b, "room_product: b");
  require_same_dim(a, b, "room_product");
  return cross_matrix(a).transpose() * cross_matrix(b);
}

Mat dyad_from_room(const Vec& a, const Vec& b) {
  const int n = static_cast<int>(a.size());
  Mat R = room_product(a, b);
  return R.trace() / (n - 1) * Mat::Identity(n, n) - R;
}

Mat cross_right(const Mat& P, const Vec& b) {
  require_dim(b, "cross_right: b");
  require_finite(P, "cross_right: P");
  if (P.cols() != b.size())
    throw DomainError("cross_right: P has " + std::to_string(P.cols()) +
                      " columns, b has dimension " + std::to_string(b.size()));
  return P * cross_matrix(-b).transpose();
}

Mat cross_left(const Vec& b, const Mat& B) {
  require_dim(b, "cross_left: b");
  require_finite(B, "cross_left: B");
  if (B.rows() != b.size())
    throw DomainError("cross_left: B has " + std::to_string(B.rows()) +
                      " rows, b has dimension " + std::to_string(b.size()));
  return cross_matrix(b) * B;
}

Mat matrix_cross_block(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "matrix_cross_block");
  return cross_right(cross_matrix(a), b);
}

Mat simultaneous_cross(const Vec& b, const Mat& P) {
  require_dim(b, "simultaneous_cross: b");
  require_finite(P, "simultaneous_cross: P");
  if (P.rows() != b.size() || P.cols() != b.size())
    throw DomainError("simultaneous_cross: P must be square of order " +
                      std::to_string(b.size()));
  return cross_matrix(b) * P * cross_matrix(-b).transpose();
}

Mat sandwich(const Vec& b, const Mat& Q) {
  require_dim(b, "sandwich: b");
  require_finite(Q, "sandwich: Q");
  const int N = cross_dim(static_cast<int>(b.size()));
  if (Q.rows() != N || Q.cols() != N)
    throw DomainError("sandwich: Q must be square of order " + std::to_string(N));
  Mat M = cross_matrix(b);
  return M.transpose() * Q * M;
}

}  // namespace crossn
