#pragma once

#include "adal/bound_types.hpp"
#include "adal/general_sdp.hpp"
#include "adal/lp.hpp"

#include <string>
#include <vector>

namespace adal {

/// Nearest psd matrix in Frobenius norm (negative eigenvalues clipped to 0).
/// Returns z itself when it is already psd. If rounding in the reconstruction
/// leaves a negative eigenvalue, the clip floor is raised in tiny steps until
/// the result tests psd. Throws EigFailed.
SymMat psd_repair(const SymMat& z);

/// LP whose feasible points certify a dual bound for a fixed psd Z_hat:
///
///   max  -b_ineq^T lambda + b_eq^T mu
///   s.t. C + A_ineq^T lambda - A_eq^T mu - S = Z_hat   (one row per position)
///        lambda >= 0,  S >= 0 on masked positions,  mu free.
///
/// C is the canonical (minimization) objective. Columns are ordered
/// lambda, mu, S; rows are the upper-triangle positions in the union of the
/// supports of C, every constraint, the mask and the nonzeros of Z_hat, sorted.
struct BoundLp {
  int num_lambda = 0;
  int num_mu = 0;
  int num_s = 0;
  std::vector<Position> rows;
  std::vector<Position> s_positions;
  /// Row bounds are exact equalities (rhs = Z_hat - C at the row position).
  LpModel model;

  const Vector& rhs() const { return model.row_lower; }
};

BoundLp build_bound_lp(const GeneralSdp& sdp, const SymMat& z_hat);

struct BoundOptions {
  /// Allowed absolute violation of each row of the certificate equation.
  double tol = 1e-5;
  /// Spend as little of `tol` as possible: first try exact rows that may be
  /// violated only where needed (elastic mode), then the smallest uniform row
  /// width (bisection, at most `tol`) for which the LP is feasible.
  bool tighten = true;
  LpOptions lp;
  /// When non-empty, the LP is handed to this program (see solve_lp_external).
  std::string external_lp;
};

struct BoundLpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector lambda;
  Vector mu;
  Vector s;
  double objective = 0.0;  // canonical sense
  std::string warning;
};

/// Solves the LP with row violations of at most tol (see BoundOptions::tighten).
BoundLpSolution solve_bound_lp(const BoundLp& lp, const BoundOptions& options = {});

/// Max-abs entry of C + A_ineq^T lambda - A_eq^T mu - S - Z_hat, recomputed
/// from the problem data (independent of the LP rows).
double certificate_residual(const GeneralSdp& sdp, const SymMat& z_hat, const Vector& lambda, const Vector& mu,
                            const Vector& s);

/// psd_repair, build_bound_lp, solve_bound_lp. A Certified value is in the
/// user's sense and includes the objective offset.
DualBound recover_bound(const GeneralSdp& sdp, const SymMat& z, const BoundOptions& options = {});

}  // namespace adal
