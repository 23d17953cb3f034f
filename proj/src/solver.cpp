#include "adal/solver.hpp"

#include "adal/errors.hpp"
#include "adal/psd.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <stdexcept>

namespace adal {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr double kSigmaMin = 1e-6;
constexpr double kSigmaMax = 1e6;

double clamp_sigma(double s) { return std::clamp(s, kSigmaMin, kSigmaMax); }

double sigma_ratio(double x_sq, double z_sq, double current) {
  const double den = std::sqrt(z_sq);
  if (den < 1e-12) return current;
  return clamp_sigma(std::sqrt(x_sq) / den);
}

}  // namespace

const char* to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Converged: return "Converged";
    case SolverStatus::IterLimit: return "IterLimit";
    case SolverStatus::TimeLimit: return "TimeLimit";
    case SolverStatus::Stalled: return "Stalled";
  }
  return "?";
}

const char* to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::Certified: return "Certified";
    case BoundStatus::LpInfeasible: return "LpInfeasible";
    case BoundStatus::LpUnbounded: return "LpUnbounded";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (!(sigma0 > 0.0)) throw std::invalid_argument("sigma0 must be > 0");
  if (postprocess_every < 1) throw std::invalid_argument("postprocess_every must be >= 1");
  if (max_iter < 0) throw std::invalid_argument("max_iter must be >= 0");
  if (!(time_limit_sec > 0.0)) throw std::invalid_argument("time_limit_sec must be > 0");
  if (stall_window < 1) throw std::invalid_argument("stall_window must be >= 1");
}

SolverState SolverState::initial(const GeneralSdp& sdp, double sigma0) {
  SolverState st;
  st.X = SymMat(sdp.n());
  st.Z = SymMat(sdp.n());
  st.S = SymMat(sdp.n());
  st.s = Vector::Zero(sdp.l());
  st.p = Vector::Zero(sdp.l());
  st.y = Vector::Zero(sdp.m());
  st.sigma = sigma0;
  st.iter = 0;
  return st;
}

// ---------------------------------------------------------------------------
// Gram factorization

struct GramFactor::Impl {
  int m = 0;
  bool dense = true;
  Eigen::SparseMatrix<double> g;
  Eigen::LDLT<Matrix> dense_ldlt;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> sparse_ldlt;
};

int GramFactor::size() const { return impl_ ? impl_->m : 0; }

Vector GramFactor::solve(const Vector& rhs) const {
  if (rhs.size() != size()) throw DimensionMismatch("GramFactor::solve: right-hand side length mismatch");
  if (size() == 0) return Vector(0);
  return impl_->dense ? Vector(impl_->dense_ldlt.solve(rhs)) : Vector(impl_->sparse_ldlt.solve(rhs));
}

Matrix GramFactor::shifted_gram() const { return impl_ ? Matrix(impl_->g) : Matrix(0, 0); }

GramFactor factorize_gram(const GeneralSdp& sdp) {
  auto impl = std::make_shared<GramFactor::Impl>();
  const int m = sdp.m();
  impl->m = m;
  impl->g = sdp.op().gram();
  for (int i = 0; i < sdp.l(); ++i) impl->g.coeffRef(i, i) += 1.0;
  impl->g.makeCompressed();

  if (m > 0) {
    double max_diag = 0.0;
    for (int i = 0; i < m; ++i) max_diag = std::max(max_diag, impl->g.coeff(i, i));
    const double density = static_cast<double>(impl->g.nonZeros()) / (static_cast<double>(m) * m);
    impl->dense = m <= 500 || density > 0.25;

    Vector d;
    if (impl->dense) {
      impl->dense_ldlt.compute(Matrix(impl->g));
      if (impl->dense_ldlt.info() != Eigen::Success) throw FactorizationFailed("dense LDL^T of the Gram matrix failed");
      d = impl->dense_ldlt.vectorD();
    } else {
      impl->sparse_ldlt.compute(impl->g);
      if (impl->sparse_ldlt.info() != Eigen::Success)
        throw FactorizationFailed("sparse LDL^T of the Gram matrix failed");
      d = impl->sparse_ldlt.vectorD();
    }
    const double tol = 1e-12 * std::max(max_diag, 1e-300);
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (!(d[i] > tol))
        throw FactorizationFailed("Gram matrix is numerically singular (pivot " + std::to_string(d[i]) +
                                  "); the equality constraints are linearly dependent");
    }
  }
  GramFactor f;
  f.impl_ = std::move(impl);
  return f;
}

// ---------------------------------------------------------------------------
// Block updates on the public state type

Vector y_update(const SolverState& st, const GeneralSdp& sdp, const GramFactor& factor) {
  const auto& op = sdp.op();
  const double sigma = st.sigma;
  Vector rhs = sdp.b() / sigma;
  rhs -= op.apply(st.X.dense()) / sigma;
  rhs += op.apply(sdp.c().to_dense());
  rhs -= op.apply(st.Z.dense());
  if (sdp.has_mask()) rhs -= op.apply(st.S.dense());
  const int l = sdp.l();
  if (l > 0) rhs.head(l) -= st.s / sigma + st.p;
  return factor.solve(rhs);
}

WBlocks build_W(const SolverState& st, const GeneralSdp& sdp, const Vector& y) {
  if (y.size() != sdp.m()) throw DimensionMismatch("build_W: multiplier length mismatch");
  Matrix w = st.X.dense() / st.sigma - sdp.c().to_dense();
  sdp.op().add_adjoint(y, 1.0, w);
  if (sdp.has_mask()) w += st.S.dense();
  const int l = sdp.l();
  Vector slack = st.s / st.sigma + y.head(l);
  return {SymMat::from_upper(std::move(w)), std::move(slack)};
}

void zx_update(SolverState& st, const SymMat& w_core, const Vector& w_slack, double sigma) {
  auto split = psd_split(w_core);
  st.Z = -1.0 * split.neg;
  st.X = sigma * split.pos;
  st.p = (-w_slack).cwiseMax(0.0);
  st.s = sigma * w_slack.cwiseMax(0.0);
}

SymMat s_update_3block(const SolverState& st, const GeneralSdp& sdp, const Vector& y, const SymMat& z) {
  const int n = sdp.n();
  SymMat out(n);
  if (!sdp.has_mask()) return out;
  Matrix v = sdp.c().to_dense() - z.dense() - st.X.dense() / st.sigma;
  sdp.op().add_adjoint(y, -1.0, v);
  for (const auto& p : sdp.nonneg_mask()) out.set(p.row, p.col, std::max(0.0, v(p.row, p.col)));
  return out;
}

Residuals residuals(const SolverState& st, const GeneralSdp& sdp) {
  const auto& op = sdp.op();
  const int l = sdp.l();
  Vector rp = op.apply(st.X.dense()) - sdp.b();
  if (l > 0) rp.head(l) += st.s;
  Matrix rd = st.Z.dense() - sdp.c().to_dense();
  if (sdp.has_mask()) rd += st.S.dense();
  op.add_adjoint(st.y, 1.0, rd);
  double rd_sq = rd.squaredNorm();
  if (l > 0) rd_sq += (st.y.head(l) + st.p).squaredNorm();
  return {rp.norm() / (1.0 + sdp.b().norm()), std::sqrt(rd_sq) / (1.0 + fro_norm(sdp.c()))};
}

double sigma_update(const SolverState& st) {
  const double x_sq = st.X.dense().squaredNorm() + st.s.squaredNorm();
  const double z_sq = st.Z.dense().squaredNorm() + st.p.squaredNorm();
  return sigma_ratio(x_sq, z_sq, st.sigma);
}

// ---------------------------------------------------------------------------
// Iteration driver

AdalSolver::AdalSolver(GeneralSdp sdp, SolverConfig config) : sdp_(std::move(sdp)), config_(std::move(config)) {
  config_.validate();
  const auto t0 = Clock::now();
  factor_ = factorize_gram(sdp_);
  factor_time_ = seconds_since(t0);

  const int n = sdp_.n();
  three_block_ = sdp_.has_mask();
  l_ = sdp_.l();
  c_dense_ = sdp_.c().to_dense();
  ac_ = sdp_.op().apply(c_dense_);
  b_norm_ = sdp_.b().norm();
  c_norm_ = fro_norm(sdp_.c());
  if (three_block_) {
    mask_.assign(static_cast<std::size_t>(n) * n, 0);
    for (const auto& p : sdp_.nonneg_mask()) {
      mask_[static_cast<std::size_t>(p.col) * n + p.row] = 1;
      mask_[static_cast<std::size_t>(p.row) * n + p.col] = 1;
    }
  }
  x_ = Matrix::Zero(n, n);
  z_ = Matrix::Zero(n, n);
  s_mat_ = Matrix::Zero(n, n);
  s_ = Vector::Zero(l_);
  p_ = Vector::Zero(l_);
  y_ = Vector::Zero(sdp_.m());
  sigma_ = config_.sigma0;
}

void AdalSolver::set_sigma(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  sigma_ = sigma;
}

void AdalSolver::step() {
  const auto& op = sdp_.op();
  const int n = sdp_.n();
  const double sig = sigma_;

  // y-update
  Vector rhs = sdp_.b() / sig;
  rhs -= op.apply(x_) / sig;
  rhs += ac_;
  rhs -= op.apply(z_);
  if (three_block_) rhs -= op.apply(s_mat_);
  if (l_ > 0) rhs.head(l_) -= s_ / sig + p_;
  y_ = factor_.solve(rhs);

  // W = X/sigma - C + A^T y (+ S)
  w_ = x_ / sig - c_dense_;
  op.add_adjoint(y_, 1.0, w_);
  if (three_block_) w_ += s_mat_;

  const auto te = Clock::now();
  detail::split_psd(w_, pos_, neg_);
  eig_time_ += seconds_since(te);

  x_old_.swap(x_);
  z_ = -neg_;
  if (three_block_) {
    // S_new = max(0, C - A^T y - Z - X/sigma) = max(0, S_old - (W)_+) on the mask.
    Matrix s_new = Matrix::Zero(n, n);
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r)
        if (mask_[static_cast<std::size_t>(c) * n + r]) s_new(r, c) = std::max(0.0, s_mat_(r, c) - pos_(r, c));
    // X + sigma (A^T y + Z + S_new - C) = sigma ((W)_+ - S_old + S_new)
    x_ = sig * (pos_ - s_mat_ + s_new);
    w_ -= s_mat_;  // back to X_old/sigma - C + A^T y for the dual residual
    s_mat_ = std::move(s_new);
  } else {
    x_ = sig * pos_;
  }

  if (l_ > 0) {
    const Vector w_slack = s_ / sig + y_.head(l_);
    p_ = (-w_slack).cwiseMax(0.0);
    s_ = sig * w_slack.cwiseMax(0.0);
  }

  // residuals
  Vector rp = op.apply(x_) - sdp_.b();
  if (l_ > 0) rp.head(l_) += s_;
  // A^T y + Z + S - C = (X_old/sigma - C + A^T y) - X_old/sigma + Z + S
  Matrix rd = w_ - x_old_ / sig + z_;
  if (three_block_) rd += s_mat_;
  double rd_sq = rd.squaredNorm();
  if (l_ > 0) rd_sq += (y_.head(l_) + p_).squaredNorm();
  res_.r_p = rp.norm() / (1.0 + b_norm_);
  res_.r_d = std::sqrt(rd_sq) / (1.0 + c_norm_);

  if (config_.sigma_rule == SigmaRule::LorenzTranDinh) {
    const double x_sq = x_.squaredNorm() + s_.squaredNorm();
    const double z_sq = z_.squaredNorm() + p_.squaredNorm();
    sigma_ = sigma_ratio(x_sq, z_sq, sigma_);
  }
  ++iter_;
}

SolverState AdalSolver::state() const {
  SolverState st;
  st.X = SymMat::from_upper(Matrix(x_));
  st.Z = SymMat::from_upper(Matrix(z_));
  st.S = SymMat::from_upper(Matrix(s_mat_));
  st.s = s_;
  st.p = p_;
  st.y = y_;
  st.sigma = sigma_;
  st.iter = iter_;
  return st;
}

double AdalSolver::primal_objective() const { return c_dense_.cwiseProduct(x_).sum(); }

double AdalSolver::dual_objective() const { return sdp_.b().dot(y_); }

double AdalSolver::complementarity() const { return z_.cwiseProduct(x_).sum(); }

SolverResult AdalSolver::run(const BoundCallback& callback) {
  SolverResult result;
  const auto t_start = Clock::now();
  double postproc = 0.0;
  int last_callback_iter = -1;

  std::ofstream log;
  if (!config_.log_path.empty()) {
    log.open(config_.log_path);
    if (!log) throw std::runtime_error("cannot open iteration log " + config_.log_path.string());
    log << "iter,r_P,r_D,sigma,obj,elapsed_sec\n" << std::setprecision(10);
  }

  auto invoke_callback = [&]() {
    if (!callback || last_callback_iter == iter_) return;
    last_callback_iter = iter_;
    const auto t0 = Clock::now();
    BoundRequest req{sdp_, SymMat::from_upper(Matrix(z_)), y_, iter_};
    std::optional<DualBound> bound = callback(req);
    postproc += seconds_since(t0);
    ++result.bound_attempts;
    if (!bound || !bound->certified()) return;
    ++result.bounds_certified;
    // canonical lower bound; larger is better
    const double canon = (bound->value - sdp_.offset()) * sdp_.sense_sign();
    const bool better = !result.best_bound ||
                        canon > (result.best_bound->value - sdp_.offset()) * sdp_.sense_sign();
    if (better) {
      result.best_bound = std::move(bound);
      result.best_bound_iter = iter_;
      result.best_bound_time_sec = seconds_since(t_start);
    }
  };

  std::vector<double> best_delta;
  double running_best = std::numeric_limits<double>::infinity();
  SolverStatus status = SolverStatus::IterLimit;

  while (true) {
    if (iter_ >= config_.max_iter) {
      status = SolverStatus::IterLimit;
      break;
    }
    if (seconds_since(t_start) >= config_.time_limit_sec) {
      status = SolverStatus::TimeLimit;
      break;
    }
    const double sigma_used = sigma_;
    step();
    const double delta = res_.delta();
    const double elapsed = seconds_since(t_start);
    if (config_.keep_history || log.is_open()) {
      IterationRecord rec{iter_,
                          res_.r_p,
                          res_.r_d,
                          sigma_used,
                          sdp_.to_user(primal_objective()),
                          sdp_.to_user(dual_objective()),
                          elapsed};
      if (log.is_open())
        log << rec.iter << ',' << rec.r_p << ',' << rec.r_d << ',' << rec.sigma << ',' << rec.primal_obj << ','
            << rec.elapsed_sec << '\n';
      if (config_.keep_history) result.history.push_back(rec);
    }
    if (delta <= config_.eps) {
      status = SolverStatus::Converged;
      break;
    }
    running_best = std::min(running_best, delta);
    best_delta.push_back(running_best);
    const auto k = best_delta.size();
    const auto window = static_cast<std::size_t>(config_.stall_window);
    if (k > window && best_delta[k - 1] > (1.0 - config_.stall_improvement) * best_delta[k - 1 - window]) {
      status = SolverStatus::Stalled;
      break;
    }
    if (iter_ % config_.postprocess_every == 0) invoke_callback();
  }
  if (iter_ > 0) invoke_callback();

  result.status = status;
  result.state = state();
  result.r_p = res_.r_p;
  result.r_d = res_.r_d;
  result.delta = res_.delta();
  result.primal_obj = sdp_.to_user(primal_objective());
  result.dual_obj = sdp_.to_user(dual_objective());
  result.iterations = iter_;
  result.factor_time = factor_time_;
  result.eig_time = eig_time_;
  result.postproc_time = postproc;
  result.total_time = seconds_since(t_start) - postproc;
  return result;
}

SolverResult solve(const GeneralSdp& sdp, const SolverConfig& config, const BoundCallback& callback) {
  AdalSolver solver(sdp, config);
  SolverResult r = solver.run(callback);
  r.total_time += solver.factor_time();
  return r;
}

}  // namespace adal
