#include "adal/general_sdp.hpp"

#include "adal/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace adal {

namespace {

std::int64_t key_of(int row, int col, int n) { return static_cast<std::int64_t>(row) * n + col; }

SparseSymMat negated(const SparseSymMat& a) {
  std::vector<SymEntry> entries(a.entries().begin(), a.entries().end());
  for (auto& e : entries) e.value = -e.value;
  return SparseSymMat(a.n(), std::move(entries));
}

}  // namespace

ConstraintOperator::ConstraintOperator(int n, std::span<const Constraint> constraints) : n_(n) {
  std::unordered_map<std::int64_t, int> index;
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (const auto& e : constraints[i].matrix.entries()) {
      auto [it, inserted] = index.try_emplace(key_of(e.row, e.col, n), static_cast<int>(positions_.size()));
      if (inserted) positions_.push_back({e.row, e.col});
      triplets.emplace_back(static_cast<int>(i), it->second, e.value);
    }
  }
  weight_.resize(static_cast<Eigen::Index>(positions_.size()));
  for (std::size_t p = 0; p < positions_.size(); ++p)
    weight_[static_cast<Eigen::Index>(p)] = positions_[p].row == positions_[p].col ? 1.0 : 2.0;
  coef_.resize(static_cast<Eigen::Index>(constraints.size()), static_cast<Eigen::Index>(positions_.size()));
  coef_.setFromTriplets(triplets.begin(), triplets.end());
  coef_.makeCompressed();
}

Vector ConstraintOperator::apply(const Matrix& x) const {
  Vector xp(static_cast<Eigen::Index>(positions_.size()));
  for (std::size_t p = 0; p < positions_.size(); ++p)
    xp[static_cast<Eigen::Index>(p)] = x(positions_[p].row, positions_[p].col) * weight_[static_cast<Eigen::Index>(p)];
  return coef_ * xp;
}

void ConstraintOperator::add_adjoint(const Vector& y, double alpha, Matrix& out) const {
  const Vector v = coef_.transpose() * y;
  for (std::size_t p = 0; p < positions_.size(); ++p) {
    const auto [r, c] = positions_[p];
    const double d = alpha * v[static_cast<Eigen::Index>(p)];
    out(r, c) += d;
    if (r != c) out(c, r) += d;
  }
}

Eigen::SparseMatrix<double> ConstraintOperator::gram() const {
  const Eigen::SparseMatrix<double> a = coef_;
  const Eigen::SparseMatrix<double> aw = a * weight_.asDiagonal();
  return Eigen::SparseMatrix<double>(aw * a.transpose());
}

GeneralSdp::GeneralSdp(int n, const SparseSymMat& objective, Sense sense, std::vector<Constraint> constraints,
                       std::vector<Position> nonneg_mask, double offset) {
  if (n < 1) throw DimensionMismatch("GeneralSdp order must be >= 1");
  if (objective.n() != n) throw DimensionMismatch("objective order does not match n");
  auto d = std::make_shared<Data>();
  d->n = n;
  d->sense = sense;
  d->offset = offset;
  d->user_c = objective;
  d->c = sense == Sense::Max ? negated(objective) : objective;

  bool seen_eq = false;
  int l = 0;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& con = constraints[i];
    if (con.matrix.n() != n)
      throw DimensionMismatch("constraint " + std::to_string(i + 1) + " has order " + std::to_string(con.matrix.n()) +
                              ", expected " + std::to_string(n));
    if (con.sense == RowSense::Eq) {
      seen_eq = true;
    } else {
      if (seen_eq) throw std::invalid_argument("inequality constraints must precede equality constraints");
      ++l;
    }
  }
  d->l = l;
  d->b.resize(static_cast<Eigen::Index>(constraints.size()));
  for (std::size_t i = 0; i < constraints.size(); ++i) d->b[static_cast<Eigen::Index>(i)] = constraints[i].rhs;

  for (auto& p : nonneg_mask) {
    if (p.row > p.col) std::swap(p.row, p.col);
    if (p.row < 0 || p.col >= n) throw std::invalid_argument("nonnegativity mask position outside the matrix");
  }
  std::sort(nonneg_mask.begin(), nonneg_mask.end());
  nonneg_mask.erase(std::unique(nonneg_mask.begin(), nonneg_mask.end()), nonneg_mask.end());
  d->mask = std::move(nonneg_mask);

  d->constraints = std::move(constraints);
  d->op = ConstraintOperator(n, d->constraints);
  d_ = std::move(d);
}

GeneralSdp append_inequalities(const GeneralSdp& sdp, std::vector<Constraint> extra) {
  std::vector<Constraint> all;
  all.reserve(static_cast<std::size_t>(sdp.m()) + extra.size());
  const auto cons = sdp.constraints();
  all.insert(all.end(), cons.begin(), cons.begin() + sdp.l());
  for (auto& c : extra) {
    if (c.sense != RowSense::Le) throw std::invalid_argument("append_inequalities: constraint is not an inequality");
    all.push_back(std::move(c));
  }
  all.insert(all.end(), cons.begin() + sdp.l(), cons.end());
  std::vector<Position> mask(sdp.nonneg_mask().begin(), sdp.nonneg_mask().end());
  return GeneralSdp(sdp.n(), sdp.user_objective(), sdp.sense(), std::move(all), std::move(mask), sdp.offset());
}

Vector apply_A(const GeneralSdp& sdp, const SymMat& x) {
  if (x.n() != sdp.n()) throw DimensionMismatch("apply_A: matrix order does not match the instance");
  return sdp.op().apply(x.dense());
}

SymMat apply_At(const GeneralSdp& sdp, const Vector& y) {
  if (y.size() != sdp.m()) throw DimensionMismatch("apply_At: multiplier length does not match m");
  Matrix out = Matrix::Zero(sdp.n(), sdp.n());
  sdp.op().add_adjoint(y, 1.0, out);
  return SymMat::from_upper(std::move(out));
}

Matrix gram(const GeneralSdp& sdp) { return Matrix(sdp.op().gram()); }

}  // namespace adal
