#pragma once

#include "adal/sym_mat.hpp"

#include <Eigen/SparseCore>

#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace adal {

enum class Sense { Min, Max };
enum class RowSense { Le, Eq };

/// One linear constraint <A, X> (<= | =) rhs.
struct Constraint {
  SparseSymMat matrix;
  double rhs = 0.0;
  RowSense sense = RowSense::Eq;
};

/// 0-based upper-triangle position (row <= col).
struct Position {
  int row = 0;
  int col = 0;
  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
};

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Precomputed sparse form of the constraint operator. Row i holds the
/// coefficients of A^i over the union of constraint supports; `weight` is 1
/// on diagonal positions and 2 off the diagonal, so that
///   (A x)_i = sum_p coef(i,p) * weight(p) * x(p)   and
///   (A^T y)(p) = sum_i coef(i,p) * y_i.
class ConstraintOperator {
 public:
  ConstraintOperator() = default;
  ConstraintOperator(int n, std::span<const Constraint> constraints);

  int n() const { return n_; }
  int rows() const { return static_cast<int>(coef_.rows()); }
  std::span<const Position> positions() const { return positions_; }

  Vector apply(const Matrix& x) const;
  /// Adds alpha * A^T y into the dense matrix `out` (both triangles).
  void add_adjoint(const Vector& y, double alpha, Matrix& out) const;
  /// A W A^T as a sparse symmetric matrix (both triangles stored).
  Eigen::SparseMatrix<double> gram() const;

 private:
  int n_ = 0;
  std::vector<Position> positions_;
  Vector weight_;
  SparseRowMatrix coef_;
};

/// SDP in general form, stored in canonical minimization sense:
///
///   min <C, X>  s.t.  <A^i, X> <= b_i (i < l),  <A^j, X> = b_j (j >= l),
///                     X psd,  X_e >= 0 for e in the nonnegativity mask.
///
/// A maximization problem is stored with C negated; reported values are
/// sign * internal + offset. Immutable; copies share the underlying data.
class GeneralSdp {
 public:
  /// `objective` is given in the user's sense. Constraints must list all
  /// inequalities before all equalities.
  GeneralSdp(int n, const SparseSymMat& objective, Sense sense, std::vector<Constraint> constraints,
             std::vector<Position> nonneg_mask = {}, double offset = 0.0);

  int n() const { return d_->n; }
  int m() const { return static_cast<int>(d_->constraints.size()); }
  int l() const { return d_->l; }

  /// Canonical (minimization) objective.
  const SparseSymMat& c() const { return d_->c; }
  /// Objective as supplied by the user.
  const SparseSymMat& user_objective() const { return d_->user_c; }
  Sense sense() const { return d_->sense; }
  double offset() const { return d_->offset; }
  double sense_sign() const { return d_->sense == Sense::Max ? -1.0 : 1.0; }
  /// Converts a canonical objective value to the user's sense.
  double to_user(double internal) const { return sense_sign() * internal + d_->offset; }

  std::span<const Constraint> constraints() const { return d_->constraints; }
  const Vector& b() const { return d_->b; }
  std::span<const Position> nonneg_mask() const { return d_->mask; }
  bool has_mask() const { return !d_->mask.empty(); }

  const ConstraintOperator& op() const { return d_->op; }

 private:
  struct Data {
    int n = 0;
    int l = 0;
    SparseSymMat c;
    SparseSymMat user_c;
    Sense sense = Sense::Min;
    double offset = 0.0;
    std::vector<Constraint> constraints;
    Vector b;
    std::vector<Position> mask;
    ConstraintOperator op;
  };
  std::shared_ptr<const Data> d_;
};

/// Returns a copy of `sdp` with `extra` inequalities inserted after the
/// existing inequalities. Every element of `extra` must have sense Le.
GeneralSdp append_inequalities(const GeneralSdp& sdp, std::vector<Constraint> extra);

/// (A X)_i = <A^i, X>, in canonical constraint order.
Vector apply_A(const GeneralSdp& sdp, const SymMat& x);
/// sum_i y_i A^i.
SymMat apply_At(const GeneralSdp& sdp, const Vector& y);
/// A A^T (vec inner products of the constraint matrices), dense m x m.
Matrix gram(const GeneralSdp& sdp);

}  // namespace adal
