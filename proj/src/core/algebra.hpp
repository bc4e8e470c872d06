#pragma once

#include <utility>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace crossn {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// The generalized cross product of a, b in R^n is a vector in R^N with
// N = n(n-1)/2, one component per index pair (i, j), i < j, holding the 2x2
// minor a_i b_j - a_j b_i.  Pairs are enumerated by increasing j, then i:
// (1,2), (1,3), (2,3), (1,4), (2,4), (3,4), ...
//
// pair_index / index_pair are the single 1-based <-> linear boundary of the
// library; everything else below takes whole vectors and matrices.

int cross_dim(int n);                      // N = n(n-1)/2, requires n >= 2
int dim_from_cross_len(int len);           // inverse of cross_dim, rejects non-triangular len
int pair_index(int n, int i, int j);       // 1-based (i, j), i < j  ->  k in [1, N]
std::pair<int, int> index_pair(int n, int k);  // 1-based k -> (i, j)

// a x b, built by the dimension recursion
//   a x b = [ abar x bbar ;  b_n * abar - a_n * bbar ],
// which lands the new pairs (i, n) behind the R^{n-1} block in pair order.
Vec cross(const Vec& a, const Vec& b);

// Same product straight from the component formula (a x b)_(i,j) = a_i b_j - a_j b_i.
// Kept as an independent cross-check of the recursion.
Vec cross_oracle(const Vec& a, const Vec& b);

// N x n matrix [[a]] with [[a]] b = a x b for every b.  Row (i, j) carries
// +a_i in column j and -a_j in column i; every other entry is zero.
Mat cross_matrix(const Vec& a);

// Same matrix in compressed storage; with two entries per row the dense form
// wastes O(n^3) zeros, noticeable beyond n ~ 64.
Eigen::SparseMatrix<double> cross_matrix_sparse(const Vec& a);

// Skew-symmetric matrices of order n form a space of dimension N and are kept
// here as their strict upper triangle in pair order, so converting to the
// cross-vector side is a straight copy.
class SkewMatrix {
public:
  SkewMatrix(int n, Vec upper);                 // upper in pair order, length N
  static SkewMatrix from_vector(const Vec& v);  // v -> skew matrix with upper triangle v
  // Validates skewness of a dense matrix (|A + A^T| small relative to |A|)
  // before discarding the redundant half.
  static SkewMatrix from_dense(const Mat& A, double tol = 1e-12);

  int n() const { return n_; }
  const Vec& upper() const { return upper_; }
  Vec to_vector() const { return upper_; }      // the inverse bijection, a memory copy
  Mat dense() const;

private:
  int n_;
  Vec upper_;
};

// [[a]]^T applied to a cross vector; for g = b x c this is the triple-product
// expansion <a,b> c - <a,c> b.
Vec grassmann_triple(const Vec& a, const Vec& g);

// a x (b x c)-style cyclic sum; identically zero.
Vec jacobi_sum(const Vec& a, const Vec& b, const Vec& c);

// [[a]]^T [[b]], an n x n matrix equal to <b,a> Id - b (x) a.
Mat room_product(const Vec& a, const Vec& b);

// Recovers the dyad b (x) a from the product above via its trace:
// b (x) a = tr([[a]]^T [[b]]) / (n-1) * Id - [[a]]^T [[b]].
Mat dyad_from_room(const Vec& a, const Vec& b);

// Row-wise product P x b = P [[-b]]^T for P with n columns: row r of the
// result is (row r of P) x b.
Mat cross_right(const Mat& P, const Vec& b);

// Column-wise product b x B = [[b]] B for B with n rows.
Mat cross_left(const Vec& b, const Mat& B);

// [[a]] x b = [[a]] [[-b]]^T, the N x N matrix coupling two cross structures.
Mat matrix_cross_block(const Vec& a, const Vec& b);

// b x P x b = [[b]] P [[-b]]^T for square P (n x n); both cross products taken
// simultaneously.  Maps sym to sym and skew to skew.
Mat simultaneous_cross(const Vec& b, const Mat& P);

// [[b]]^T Q [[b]] for Q of order N; for Q = Id this collapses to
// |b|^2 Id - b (x) b.
Mat sandwich(const Vec& b, const Mat& Q);

}  // namespace crossn
