#pragma once

#include "adal/bound_types.hpp"
#include "adal/general_sdp.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace adal {

enum class SigmaRule {
  /// sigma = ||Xbar|| / ||Zbar|| every iteration, clamped to [1e-6, 1e6].
  LorenzTranDinh,
  Fixed,
};

struct SolverConfig {
  double eps = 1e-5;
  int max_iter = 100000;
  double time_limit_sec = 1800.0;
  double sigma0 = 1.0;
  SigmaRule sigma_rule = SigmaRule::LorenzTranDinh;
  /// Iterations between bound-recovery callbacks.
  int postprocess_every = 200;
  /// Reserved; the iteration is deterministic.
  std::uint64_t seed = 0;
  /// Return Stalled when the best delta improved by less than
  /// `stall_improvement` (relative) over the last `stall_window` iterations.
  int stall_window = 500;
  double stall_improvement = 1e-3;
  /// CSV iteration log (iter,r_P,r_D,sigma,obj,elapsed_sec); empty disables it.
  std::filesystem::path log_path;
  bool keep_history = true;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// ADAL iterates. S stays zero outside the nonnegativity mask and is
/// identically zero for problems without a mask.
struct SolverState {
  SymMat X;
  Vector s;  // inequality slacks, >= 0
  Vector y;
  SymMat Z;
  Vector p;  // dual slacks of the inequality rows, >= 0
  SymMat S;
  double sigma = 1.0;
  int iter = 0;

  /// Zero start with penalty sigma0.
  static SolverState initial(const GeneralSdp& sdp, double sigma0);
};

enum class SolverStatus { Converged, IterLimit, TimeLimit, Stalled };

const char* to_string(SolverStatus s);

struct IterationRecord {
  int iter = 0;
  double r_p = 0.0;
  double r_d = 0.0;
  double sigma = 0.0;
  double primal_obj = 0.0;  // user sense
  double dual_obj = 0.0;    // user sense
  double elapsed_sec = 0.0;
};

struct Residuals {
  double r_p = 0.0;
  double r_d = 0.0;
  double delta() const { return r_p > r_d ? r_p : r_d; }
};

struct SolverResult {
  SolverStatus status = SolverStatus::IterLimit;
  SolverState state;
  double r_p = 0.0;
  double r_d = 0.0;
  double delta = 0.0;
  double primal_obj = 0.0;  // user sense
  double dual_obj = 0.0;    // user sense
  int iterations = 0;
  std::vector<IterationRecord> history;

  std::optional<DualBound> best_bound;
  int best_bound_iter = 0;
  /// Wall-clock seconds since the start of the solve when the best bound
  /// was obtained (iterations plus the post-processing run so far).
  double best_bound_time_sec = 0.0;
  int bound_attempts = 0;
  int bounds_certified = 0;

  double factor_time = 0.0;
  double eig_time = 0.0;
  /// Wall time of the iterations, excluding bound recovery.
  double total_time = 0.0;
  /// Wall time spent in bound recovery.
  double postproc_time = 0.0;
};

/// Cached factorization of A A^T + Diag(1 on inequality rows, 0 on equality rows).
class GramFactor {
 public:
  int size() const;
  Vector solve(const Vector& rhs) const;
  /// The factorized matrix, dense. Intended for tests and diagnostics.
  Matrix shifted_gram() const;

 private:
  friend GramFactor factorize_gram(const GeneralSdp& sdp);
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Throws FactorizationFailed when the shifted Gram matrix is numerically singular.
GramFactor factorize_gram(const GeneralSdp& sdp);

/// Closed-form maximizer of the augmented Lagrangian over y:
///   (A A^T + Diag(1_l; 0))^{-1} [ b/sigma - A(X/sigma - C + Z + S) - (s/sigma + p; 0) ].
Vector y_update(const SolverState& state, const GeneralSdp& sdp, const GramFactor& factor);

struct WBlocks {
  SymMat core;  // X/sigma - C + A^T y (+ S with a mask)
  Vector slack; // s/sigma + y_ineq
};
WBlocks build_W(const SolverState& state, const GeneralSdp& sdp, const Vector& y);

/// Z = -(W)_-, X = sigma (W)_+, p = max(0, -w_slack), s = sigma max(0, w_slack).
void zx_update(SolverState& state, const SymMat& w_core, const Vector& w_slack, double sigma);

/// Exact maximizer over S >= 0 (on the mask) with the other blocks fixed:
/// max(0, C - A^T y - Z - X/sigma) on masked entries, zero elsewhere.
SymMat s_update_3block(const SolverState& state, const GeneralSdp& sdp, const Vector& y, const SymMat& z);

Residuals residuals(const SolverState& state, const GeneralSdp& sdp);

/// sqrt(||X||^2 + ||s||^2) / sqrt(||Z||^2 + ||p||^2) clamped to [1e-6, 1e6];
/// the current sigma when the denominator is below 1e-12.
double sigma_update(const SolverState& state);

/// Snapshot handed to the bound-recovery hook.
struct BoundRequest {
  const GeneralSdp& sdp;
  SymMat z;
  Vector y;
  int iter = 0;
};
using BoundCallback = std::function<std::optional<DualBound>(const BoundRequest&)>;

/// Steppable ADAL iteration. Operates on dense n x n blocks and slack vectors;
/// the slack-expanded matrices are never formed.
class AdalSolver {
 public:
  AdalSolver(GeneralSdp sdp, SolverConfig config);

  /// One iteration (y, Z[, S], X, slacks, residuals, sigma).
  void step();
  /// Overrides sigma for the next iteration.
  void set_sigma(double sigma);

  const GeneralSdp& sdp() const { return sdp_; }
  const SolverConfig& config() const { return config_; }
  SolverState state() const;
  Residuals last_residuals() const { return res_; }
  double primal_objective() const;  // canonical sense
  double dual_objective() const;    // canonical sense
  int iteration() const { return iter_; }
  bool three_block() const { return three_block_; }
  double factor_time() const { return factor_time_; }
  double eig_time() const { return eig_time_; }
  /// <Z, X> of the current iterate.
  double complementarity() const;

  /// Iterates until delta <= eps or a limit triggers.
  SolverResult run(const BoundCallback& callback = {});

 private:
  GeneralSdp sdp_;
  SolverConfig config_;
  GramFactor factor_;
  bool three_block_ = false;
  int l_ = 0;

  Matrix c_dense_;
  Vector ac_;  // A(C)
  double b_norm_ = 0.0;
  double c_norm_ = 0.0;
  std::vector<std::uint8_t> mask_;  // n*n, column-major

  Matrix x_, z_, s_mat_;
  Vector s_, p_, y_;
  double sigma_ = 1.0;
  int iter_ = 0;
  Residuals res_{};
  double factor_time_ = 0.0;
  double eig_time_ = 0.0;

  Matrix w_, pos_, neg_, x_old_;
};

SolverResult solve(const GeneralSdp& sdp, const SolverConfig& config, const BoundCallback& callback = {});

}  // namespace adal
