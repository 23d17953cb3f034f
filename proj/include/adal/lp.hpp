#pragma once

#include "adal/general_sdp.hpp"

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace adal {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// maximize cost^T x  s.t.  row_lower <= A x <= row_upper,  col_lower <= x <= col_upper.
/// Infinite bounds are allowed on both rows and columns.
struct LpModel {
  Vector cost;
  Vector col_lower;
  Vector col_upper;
  SparseRowMatrix a;
  Vector row_lower;
  Vector row_upper;
  /// Optional names used by the MPS writer; generated when empty.
  std::vector<std::string> col_names;
  std::vector<std::string> row_names;

  int num_cols() const { return static_cast<int>(cost.size()); }
  int num_rows() const { return static_cast<int>(a.rows()); }
  /// Throws DimensionMismatch on inconsistent sizes.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus s);

struct LpOptions {
  /// Primal feasibility tolerance of the simplex, absolute.
  double feas_tol = 1e-9;
  /// When positive, each row may be violated by up to this amount. The total
  /// violation is minimized first (phase 1) and then held fixed as a budget
  /// while the objective is optimized.
  double elastic_tol = 0.0;
  /// Reduced-cost tolerance.
  double opt_tol = 1e-9;
  /// 0 picks a limit proportional to the problem size.
  long max_pivots = 0;
  /// Upper limit on rows * columns of the dense tableau after presolve.
  std::size_t max_tableau_entries = 60'000'000;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vector x;
  double objective = 0.0;
  long pivots = 0;
  int presolved_rows = 0;
  int presolved_cols = 0;
  /// Set when the solver gave up (pivot limit, tableau too large, failed
  /// verification); such outcomes are reported as Infeasible.
  std::string warning;
};

/// Presolve followed by a dense two-phase bounded primal simplex. An Optimal
/// result satisfies every row and column bound to within a small multiple of
/// feas_tol.
LpResult solve_lp(const LpModel& lp, const LpOptions& options = {});

/// max |violation| of the row and column bounds at x.
double max_violation(const LpModel& lp, const Vector& x);

/// Free-format MPS with OBJSENSE MAX, RANGES for two-sided rows and BOUNDS.
void write_mps(const LpModel& lp, std::ostream& out, const std::string& name = "LP");
/// Reads the subset of free MPS produced by write_mps (plus MIN objectives,
/// which are negated into the maximization form). Throws ParseError.
LpModel read_mps(std::istream& in);

/// Solution file exchanged with external LP programs:
///   status optimal|infeasible|unbounded
///   objective <value>          (optional)
///   <column name> <value>      (one line per column; missing columns are 0)
void write_solution(const LpModel& lp, const LpResult& result, std::ostream& out);
LpResult read_solution(const LpModel& lp, std::istream& in);

/// Runs `command <model.mps> <solution.txt>` through the shell in a temporary
/// directory and reads the solution back. A missing or unreadable solution,
/// or a non-zero exit status, yields Infeasible with a warning.
LpResult solve_lp_external(const LpModel& lp, const std::string& command);

}  // namespace adal
