#pragma once

#include "adal/sym_mat.hpp"

#include <optional>
#include <string>

namespace adal {

enum class BoundStatus { Certified, LpInfeasible, LpUnbounded };

const char* to_string(BoundStatus s);

/// Outcome of one bound-recovery attempt from an approximate dual matrix.
struct DualBound {
  BoundStatus status = BoundStatus::LpInfeasible;
  /// Bound in the user's sense (upper bound for max problems, lower bound
  /// for min problems). NaN unless Certified.
  double value = 0.0;
  Vector lambda;    // one per inequality, >= 0
  Vector mu;        // one per equality
  Vector s_values;  // one per nonnegativity-mask entry, >= 0
  std::optional<SymMat> z_hat;
  double wall_time_sec = 0.0;
  /// Max-abs violation of C + A_ineq^T lambda - A_eq^T mu - S - Z_hat = 0.
  double feasibility_residual = 0.0;
  std::string message;

  bool certified() const { return status == BoundStatus::Certified; }
};

}  // namespace adal
