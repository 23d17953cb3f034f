#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace adal {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense symmetric matrix. Entries (i,j) and (j,i) are bitwise equal.
class SymMat {
 public:
  /// 1x1 zero matrix.
  SymMat() : SymMat(1) {}
  /// Zero matrix of order n (n >= 1).
  explicit SymMat(int n);

  static SymMat identity(int n);
  static SymMat constant(int n, double value);
  /// Symmetrizes as (A + A^T) / 2.
  static SymMat from_dense(const Matrix& a);
  /// Takes ownership and mirrors the upper triangle into the lower one.
  static SymMat from_upper(Matrix&& a);

  int n() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Matrix& dense() const { return m_; }

  /// Sets both (i,j) and (j,i).
  void set(int i, int j, double value);

  SymMat& operator+=(const SymMat& o);
  SymMat& operator-=(const SymMat& o);
  SymMat& operator*=(double s);

  friend SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
  friend SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
  friend SymMat operator*(double s, SymMat a) { return a *= s; }

 private:
  Matrix m_;
};

/// One stored upper-triangle coefficient, 0-based, row <= col.
struct SymEntry {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Sparse symmetric coefficient matrix stored as unique upper-triangle
/// entries. An off-diagonal entry (i,j) stands for both (i,j) and (j,i).
class SparseSymMat {
 public:
  SparseSymMat() = default;
  /// Entries with row > col are mirrored to the upper triangle. Throws
  /// std::invalid_argument on out-of-range or duplicate positions.
  SparseSymMat(int n, std::vector<SymEntry> entries);

  int n() const { return n_; }
  std::span<const SymEntry> entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  Matrix to_dense() const;

 private:
  int n_ = 0;
  std::vector<SymEntry> entries_;  // sorted by (row, col)
};

/// trace(A X).
double inner(const SymMat& a, const SymMat& x);
/// trace(A X); off-diagonal stored entries count twice.
double inner(const SparseSymMat& a, const SymMat& x);

double fro_norm(const SymMat& x);
double fro_norm(const SparseSymMat& a);

}  // namespace adal
