#include "adal/dual_bound.hpp"

#include "adal/errors.hpp"
#include "adal/psd.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>

namespace adal {

SymMat psd_repair(const SymMat& z) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(z.dense());
  if (eig.info() != Eigen::Success) throw EigFailed("symmetric eigensolver did not converge");
  const Vector& lam = eig.eigenvalues();
  if (lam[0] >= 0.0) return z;
  const Matrix& q = eig.eigenvectors();
  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  double floor = 0.0;
  Matrix r;
  for (int attempt = 0; attempt < 40; ++attempt) {
    const Vector clipped = lam.unaryExpr([floor](double v) { return v < floor ? floor : v; });
    r = q * clipped.asDiagonal() * q.transpose();
    SymMat out = SymMat::from_upper(std::move(r));
    if (detail::min_eigenvalue(out.dense()) >= 0.0) return out;
    floor = floor == 0.0 ? 1e-15 * scale : floor * 4.0;
    r = Matrix();
  }
  throw EigFailed("could not reconstruct a psd matrix");
}

BoundLp build_bound_lp(const GeneralSdp& sdp, const SymMat& z_hat) {
  const int n = sdp.n();
  if (z_hat.n() != n) throw DimensionMismatch("Z_hat has order " + std::to_string(z_hat.n()) + ", expected " + std::to_string(n));
  const int m = sdp.m();
  const int l = sdp.l();

  std::vector<char> used(static_cast<std::size_t>(n) * n, 0);
  auto mark = [&](int r, int c) { used[static_cast<std::size_t>(r) * n + c] = 1; };
  for (const auto& e : sdp.c().entries()) mark(e.row, e.col);
  for (const auto& con : sdp.constraints())
    for (const auto& e : con.matrix.entries()) mark(e.row, e.col);
  for (const auto& p : sdp.nonneg_mask()) mark(p.row, p.col);
  const Matrix& zd = z_hat.dense();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i)
      if (zd(i, j) != 0.0) mark(i, j);

  BoundLp lp;
  lp.num_lambda = l;
  lp.num_mu = m - l;
  lp.num_s = static_cast<int>(sdp.nonneg_mask().size());
  lp.s_positions.assign(sdp.nonneg_mask().begin(), sdp.nonneg_mask().end());

  std::vector<int> row_of(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (used[static_cast<std::size_t>(i) * n + j]) {
        row_of[static_cast<std::size_t>(i) * n + j] = static_cast<int>(lp.rows.size());
        lp.rows.push_back({i, j});
      }
  auto row = [&](int r, int c) { return row_of[static_cast<std::size_t>(r) * n + c]; };

  const int num_rows = static_cast<int>(lp.rows.size());
  const int num_cols = m + lp.num_s;
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < m; ++i) {
    const double sign = i < l ? 1.0 : -1.0;
    for (const auto& e : sdp.constraints()[static_cast<std::size_t>(i)].matrix.entries())
      trip.emplace_back(row(e.row, e.col), i, sign * e.value);
  }
  for (int k = 0; k < lp.num_s; ++k) {
    const auto p = lp.s_positions[static_cast<std::size_t>(k)];
    trip.emplace_back(row(p.row, p.col), m + k, -1.0);
  }

  LpModel& mod = lp.model;
  mod.a.resize(num_rows, num_cols);
  mod.a.setFromTriplets(trip.begin(), trip.end());
  mod.a.makeCompressed();

  Vector rhs(num_rows);
  for (int r = 0; r < num_rows; ++r) rhs[r] = zd(lp.rows[static_cast<std::size_t>(r)].row, lp.rows[static_cast<std::size_t>(r)].col);
  for (const auto& e : sdp.c().entries()) rhs[row(e.row, e.col)] -= e.value;
  mod.row_lower = rhs;
  mod.row_upper = rhs;

  mod.cost.resize(num_cols);
  mod.col_lower.resize(num_cols);
  mod.col_upper = Vector::Constant(num_cols, kInf);
  const Vector& b = sdp.b();
  for (int i = 0; i < m; ++i) {
    mod.cost[i] = i < l ? -b[i] : b[i];
    mod.col_lower[i] = i < l ? 0.0 : -kInf;
  }
  for (int k = 0; k < lp.num_s; ++k) {
    mod.cost[m + k] = 0.0;
    mod.col_lower[m + k] = 0.0;
  }

  mod.col_names.reserve(static_cast<std::size_t>(num_cols));
  for (int i = 0; i < l; ++i) mod.col_names.push_back("lambda" + std::to_string(i + 1));
  for (int i = l; i < m; ++i) mod.col_names.push_back("mu" + std::to_string(i - l + 1));
  for (const auto& p : lp.s_positions)
    mod.col_names.push_back("s_" + std::to_string(p.row + 1) + "_" + std::to_string(p.col + 1));
  mod.row_names.reserve(lp.rows.size());
  for (const auto& p : lp.rows) mod.row_names.push_back("z_" + std::to_string(p.row + 1) + "_" + std::to_string(p.col + 1));
  return lp;
}

BoundLpSolution solve_bound_lp(const BoundLp& lp, const BoundOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("LP tolerance must be positive");
  auto attempt = [&](double half_width, double elastic) {
    LpModel mod = lp.model;
    mod.row_lower.array() -= half_width;
    mod.row_upper.array() += half_width;
    if (!options.external_lp.empty()) return solve_lp_external(mod, options.external_lp);
    LpOptions lo = options.lp;
    lo.elastic_tol = elastic;
    return solve_lp(mod, lo);
  };
  // keep a sliver of the tolerance for simplex round-off
  double hi = options.tol * (1.0 - 1e-3);
  BoundLpSolution out;
  LpResult r;
  bool done = false;
  if (options.tighten && options.external_lp.empty()) {
    // Exact rows, violated only where necessary: slack given to a row can be
    // spent on the objective, so unneeded slack inflates the bound.
    r = attempt(0.0, hi);
    done = r.status == LpStatus::Optimal;
    // a thin uniform band absorbs the round-off that defeats exact rows
    for (double w = hi * 1e-3; !done && w < hi * 0.5; w *= 10.0) {
      r = attempt(w, hi - w);
      done = r.status == LpStatus::Optimal;
    }
  }
  if (!done) {
    r = attempt(hi, 0.0);
    out.status = r.status;
    out.warning = r.warning;
    if (r.status != LpStatus::Optimal) return out;
    if (options.tighten) {
      // smallest uniform width that still admits a solution
      const double scale = std::max(1.0, lp.model.row_lower.size() > 0 ? lp.model.row_lower.cwiseAbs().maxCoeff() : 0.0);
      double lo = std::min(hi, 1e-11 * scale);
      LpResult tight = attempt(lo, 0.0);
      if (tight.status == LpStatus::Optimal) {
        r = std::move(tight);
      } else {
        for (int k = 0; k < 6; ++k) {
          const double mid = std::sqrt(lo * hi);
          LpResult t = attempt(mid, 0.0);
          if (t.status == LpStatus::Optimal) {
            hi = mid;
            r = std::move(t);
          } else {
            lo = mid;
          }
        }
      }
    }
  }
  out.status = r.status;
  out.warning = r.warning;

  const int m = lp.num_lambda + lp.num_mu;
  out.lambda = r.x.head(lp.num_lambda).cwiseMax(0.0);
  out.mu = r.x.segment(lp.num_lambda, lp.num_mu);
  out.s = r.x.segment(m, lp.num_s).cwiseMax(0.0);
  out.objective = lp.model.cost.head(lp.num_lambda).dot(out.lambda) +
                  lp.model.cost.segment(lp.num_lambda, lp.num_mu).dot(out.mu);
  return out;
}

double certificate_residual(const GeneralSdp& sdp, const SymMat& z_hat, const Vector& lambda, const Vector& mu,
                            const Vector& s) {
  const int l = sdp.l();
  if (lambda.size() != l || mu.size() != sdp.m() - l || s.size() != static_cast<Eigen::Index>(sdp.nonneg_mask().size()))
    throw DimensionMismatch("certificate vector sizes do not match the problem");
  Matrix r = -z_hat.dense();
  auto add = [&r](int i, int j, double v) {
    r(i, j) += v;
    if (i != j) r(j, i) += v;
  };
  for (const auto& e : sdp.c().entries()) add(e.row, e.col, e.value);
  for (int i = 0; i < sdp.m(); ++i) {
    const double y = i < l ? lambda[i] : -mu[i - l];
    for (const auto& e : sdp.constraints()[static_cast<std::size_t>(i)].matrix.entries()) add(e.row, e.col, y * e.value);
  }
  for (std::size_t k = 0; k < sdp.nonneg_mask().size(); ++k) {
    const auto p = sdp.nonneg_mask()[k];
    add(p.row, p.col, -s[static_cast<Eigen::Index>(k)]);
  }
  return r.cwiseAbs().maxCoeff();
}

DualBound recover_bound(const GeneralSdp& sdp, const SymMat& z, const BoundOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  DualBound out;
  out.value = std::nan("");
  SymMat z_hat = psd_repair(z);
  const BoundLp lp = build_bound_lp(sdp, z_hat);
  const BoundLpSolution sol = solve_bound_lp(lp, options);
  out.message = sol.warning;
  switch (sol.status) {
    case LpStatus::Infeasible:
      out.status = BoundStatus::LpInfeasible;
      if (out.message.empty()) out.message = "no certificate for this Z";
      break;
    case LpStatus::Unbounded:
      out.status = BoundStatus::LpUnbounded;
      out.message = "bound LP unbounded: the primal problem appears infeasible";
      break;
    case LpStatus::Optimal: {
      const double res = certificate_residual(sdp, z_hat, sol.lambda, sol.mu, sol.s);
      out.feasibility_residual = res;
      out.lambda = sol.lambda;
      out.mu = sol.mu;
      out.s_values = sol.s;
      if (res > options.tol) {
        out.status = BoundStatus::LpInfeasible;
        out.message = "certificate residual " + std::to_string(res) + " exceeds the tolerance";
      } else {
        out.status = BoundStatus::Certified;
        out.value = sdp.to_user(sol.objective);
      }
      break;
    }
  }
  out.z_hat = std::move(z_hat);
  out.wall_time_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace adal
