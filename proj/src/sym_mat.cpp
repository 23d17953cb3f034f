#include "adal/sym_mat.hpp"

#include "adal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace adal {

SymMat::SymMat(int n) {
  if (n < 1) throw DimensionMismatch("SymMat order must be >= 1, got " + std::to_string(n));
  m_ = Matrix::Zero(n, n);
}

SymMat SymMat::identity(int n) {
  SymMat s(n);
  s.m_.diagonal().setOnes();
  return s;
}

SymMat SymMat::constant(int n, double value) {
  SymMat s(n);
  s.m_.setConstant(value);
  return s;
}

SymMat SymMat::from_dense(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw DimensionMismatch("SymMat::from_dense needs a non-empty square matrix");
  SymMat s;
  s.m_ = 0.5 * (a + a.transpose());
  return s;
}

SymMat SymMat::from_upper(Matrix&& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw DimensionMismatch("SymMat::from_upper needs a non-empty square matrix");
  SymMat s;
  s.m_ = std::move(a);
  s.m_.triangularView<Eigen::StrictlyLower>() = s.m_.transpose();
  return s;
}

void SymMat::set(int i, int j, double value) {
  m_(i, j) = value;
  m_(j, i) = value;
}

SymMat& SymMat::operator+=(const SymMat& o) {
  if (o.n() != n()) throw DimensionMismatch("SymMat sum: order mismatch");
  m_ += o.m_;
  return *this;
}

SymMat& SymMat::operator-=(const SymMat& o) {
  if (o.n() != n()) throw DimensionMismatch("SymMat difference: order mismatch");
  m_ -= o.m_;
  return *this;
}

SymMat& SymMat::operator*=(double s) {
  m_ *= s;
  return *this;
}

SparseSymMat::SparseSymMat(int n, std::vector<SymEntry> entries) : n_(n), entries_(std::move(entries)) {
  if (n < 1) throw std::invalid_argument("SparseSymMat order must be >= 1");
  for (auto& e : entries_) {
    if (e.row > e.col) std::swap(e.row, e.col);
    if (e.row < 0 || e.col >= n)
      throw std::invalid_argument("SparseSymMat entry (" + std::to_string(e.row + 1) + "," +
                                  std::to_string(e.col + 1) + ") outside order " + std::to_string(n));
  }
  std::sort(entries_.begin(), entries_.end(), [](const SymEntry& a, const SymEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 1; k < entries_.size(); ++k) {
    if (entries_[k].row == entries_[k - 1].row && entries_[k].col == entries_[k - 1].col)
      throw std::invalid_argument("SparseSymMat duplicate entry (" + std::to_string(entries_[k].row + 1) + "," +
                                  std::to_string(entries_[k].col + 1) + ")");
  }
}

Matrix SparseSymMat::to_dense() const {
  Matrix d = Matrix::Zero(n_, n_);
  for (const auto& e : entries_) {
    d(e.row, e.col) = e.value;
    d(e.col, e.row) = e.value;
  }
  return d;
}

double inner(const SymMat& a, const SymMat& x) {
  if (a.n() != x.n()) throw DimensionMismatch("inner: order mismatch");
  return a.dense().cwiseProduct(x.dense()).sum();
}

double inner(const SparseSymMat& a, const SymMat& x) {
  if (a.n() != x.n()) throw DimensionMismatch("inner: order mismatch");
  double acc = 0.0;
  for (const auto& e : a.entries()) {
    const double v = e.value * x(e.row, e.col);
    acc += e.row == e.col ? v : 2.0 * v;
  }
  return acc;
}

double fro_norm(const SymMat& x) { return x.dense().norm(); }

double fro_norm(const SparseSymMat& a) {
  double acc = 0.0;
  for (const auto& e : a.entries()) acc += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
  return std::sqrt(acc);
}

}  // namespace adal
