#include "adal/psd.hpp"

#include "adal/errors.hpp"

#include <Eigen/Eigenvalues>

namespace adal {

namespace detail {

namespace {

void mirror_upper(Matrix& a) { a.triangularView<Eigen::StrictlyLower>() = a.transpose(); }

}  // namespace

void split_psd(const Matrix& w, Matrix& pos, Matrix& neg) {
  const Eigen::Index n = w.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(w);
  if (eig.info() != Eigen::Success) throw EigFailed("symmetric eigensolver did not converge");
  const Vector& lam = eig.eigenvalues();  // ascending
  const Matrix& q = eig.eigenvectors();
  Eigen::Index first_pos = 0;
  while (first_pos < n && lam[first_pos] <= 0.0) ++first_pos;
  const Eigen::Index num_pos = n - first_pos;

  if (num_pos <= first_pos) {
    pos.setZero(n, n);
    if (num_pos > 0) {
      const Matrix qp = q.rightCols(num_pos) * lam.tail(num_pos).cwiseSqrt().asDiagonal();
      pos.selfadjointView<Eigen::Upper>().rankUpdate(qp);
      mirror_upper(pos);
    }
    neg = w - pos;
  } else {
    neg.setZero(n, n);
    if (first_pos > 0) {
      const Matrix qn = q.leftCols(first_pos) * (-lam.head(first_pos)).cwiseSqrt().asDiagonal();
      neg.selfadjointView<Eigen::Upper>().rankUpdate(qn, -1.0);
      mirror_upper(neg);
    }
    pos = w - neg;
  }
  // w is symmetric and the explicit part is mirrored, so the difference is too,
  // up to the order of floating-point subtraction; force it exactly.
  mirror_upper(pos);
  mirror_upper(neg);
}

double min_eigenvalue(const Matrix& w) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(w, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw EigFailed("symmetric eigensolver did not converge");
  return eig.eigenvalues()[0];
}

}  // namespace detail

PsdSplit psd_split(const SymMat& w) {
  Matrix pos;
  Matrix neg;
  detail::split_psd(w.dense(), pos, neg);
  return {SymMat::from_upper(std::move(pos)), SymMat::from_upper(std::move(neg))};
}

}  // namespace adal
