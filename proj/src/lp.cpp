#include "adal/lp.hpp"

#include "adal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace adal {

void LpModel::validate() const {
  const auto n = cost.size();
  if (col_lower.size() != n || col_upper.size() != n || a.cols() != n)
    throw DimensionMismatch("LP column data sizes disagree");
  if (row_lower.size() != a.rows() || row_upper.size() != a.rows())
    throw DimensionMismatch("LP row bound sizes disagree with the matrix");
  if (!col_names.empty() && static_cast<Eigen::Index>(col_names.size()) != n)
    throw DimensionMismatch("LP column names size mismatch");
  if (!row_names.empty() && static_cast<Eigen::Index>(row_names.size()) != a.rows())
    throw DimensionMismatch("LP row names size mismatch");
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

double max_violation(const LpModel& lp, const Vector& x) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    worst = std::max(worst, lp.col_lower[j] - x[j]);
    worst = std::max(worst, x[j] - lp.col_upper[j]);
  }
  const Vector ax = lp.a * x;
  for (Eigen::Index i = 0; i < ax.size(); ++i) {
    worst = std::max(worst, lp.row_lower[i] - ax[i]);
    worst = std::max(worst, ax[i] - lp.row_upper[i]);
  }
  return worst;
}

namespace {

constexpr double kZero = 1e-13;

double lower_minus(double l, double hi) { return (std::isinf(l) || std::isinf(hi)) ? -kInf : l - hi; }
double upper_minus(double u, double lo) { return (std::isinf(u) || std::isinf(lo)) ? kInf : u - lo; }

double clamp_to(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// ---------------------------------------------------------------------------
// Dense bounded simplex on  row_lo <= A x <= row_hi,  lo <= x <= hi,  max c^T x.
// Internally every row i gets a variable r_i = A_i x with the row bounds, so the
// constraint system is [A  -I  art] v = 0 and all bounds live on variables.

class DenseSimplex {
 public:
  DenseSimplex(const Matrix& a, const Vector& row_lo, const Vector& row_hi, const Vector& cost, const Vector& lo,
               const Vector& hi, const LpOptions& opt)
      : m_(static_cast<int>(a.rows())), n_(static_cast<int>(a.cols())), opt_(opt) {
    Vector x0(n_);
    for (int j = 0; j < n_; ++j) x0[j] = std::isfinite(lo[j]) ? lo[j] : (std::isfinite(hi[j]) ? hi[j] : 0.0);
    const Vector v = a * x0;

    std::vector<int> art_rows;
    std::vector<double> art_sign;
    for (int i = 0; i < m_; ++i) {
      if (v[i] < row_lo[i] - opt_.feas_tol || v[i] > row_hi[i] + opt_.feas_tol) {
        art_rows.push_back(i);
        art_sign.push_back(v[i] < row_lo[i] ? 1.0 : -1.0);
      }
    }
    num_art_ = static_cast<int>(art_rows.size());
    total_ = n_ + m_ + num_art_;

    t_ = Matrix::Zero(m_, total_);
    lo_.resize(total_);
    hi_.resize(total_);
    val_.resize(total_);
    cost_ = Vector::Zero(total_);
    basis_.assign(static_cast<std::size_t>(m_), -1);
    row_of_.assign(static_cast<std::size_t>(total_), -1);

    t_.leftCols(n_) = a;
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lo[j];
      hi_[j] = hi[j];
      val_[j] = x0[j];
      cost_[j] = cost[j];
    }
    for (int i = 0; i < m_; ++i) {
      t_(i, n_ + i) = -1.0;
      lo_[n_ + i] = row_lo[i];
      hi_[n_ + i] = row_hi[i];
    }
    std::vector<int> art_of_row(static_cast<std::size_t>(m_), -1);
    for (int k = 0; k < num_art_; ++k) {
      const int i = art_rows[static_cast<std::size_t>(k)];
      const int var = n_ + m_ + k;
      art_of_row[static_cast<std::size_t>(i)] = var;
      t_(i, var) = art_sign[static_cast<std::size_t>(k)];
      lo_[var] = 0.0;
      hi_[var] = kInf;
    }
    for (int i = 0; i < m_; ++i) {
      const int rv = n_ + i;
      const int av = art_of_row[static_cast<std::size_t>(i)];
      if (av < 0) {
        val_[rv] = v[i];
        make_basic(i, rv);
      } else {
        const double b = v[i] < row_lo[i] ? row_lo[i] : row_hi[i];
        val_[rv] = b;
        val_[av] = std::abs(b - v[i]);
        make_basic(i, av);
      }
      t_.row(i) /= t_(i, basis_[static_cast<std::size_t>(i)]);
    }
  }

  // Returns false on pivot limit.
  LpStatus run(long& pivots, std::string& warning) {
    const long limit = opt_.max_pivots > 0 ? opt_.max_pivots : 50L * (m_ + total_) + 10000L;
    if (num_art_ > 0) {
      Vector phase1 = Vector::Zero(total_);
      for (int k = 0; k < num_art_; ++k) phase1[n_ + m_ + k] = -1.0;
      const Outcome o = iterate(phase1, true, pivots, limit);
      if (o == Outcome::Limit) {
        warning = "simplex pivot limit reached in phase 1";
        return LpStatus::Infeasible;
      }
      double infeas = 0.0;
      for (int k = 0; k < num_art_; ++k) infeas += val_[n_ + m_ + k];
      if (infeas > opt_.feas_tol * std::max(1, m_)) {
        if (!(opt_.elastic_tol > 0.0)) return LpStatus::Infeasible;
        for (int k = 0; k < num_art_; ++k)
          if (val_[n_ + m_ + k] > opt_.elastic_tol) return LpStatus::Infeasible;
      }
      // remaining artificials keep their phase-1 level as a violation budget
      for (int k = 0; k < num_art_; ++k) {
        lo_[n_ + m_ + k] = 0.0;
        hi_[n_ + m_ + k] = std::max(0.0, val_[n_ + m_ + k]);
      }
    }
    const Outcome o = iterate(cost_, false, pivots, limit);
    if (o == Outcome::Limit) {
      warning = "simplex pivot limit reached in phase 2";
      return LpStatus::Infeasible;
    }
    if (o == Outcome::Unbounded) return LpStatus::Unbounded;
    return LpStatus::Optimal;
  }

  Vector solution() const { return val_.head(n_); }

 private:
  enum class Outcome { Optimal, Unbounded, Limit };

  void make_basic(int row, int var) {
    const int old = basis_[static_cast<std::size_t>(row)];
    if (old >= 0) row_of_[static_cast<std::size_t>(old)] = -1;
    basis_[static_cast<std::size_t>(row)] = var;
    row_of_[static_cast<std::size_t>(var)] = row;
  }

  bool is_basic(int j) const { return row_of_[static_cast<std::size_t>(j)] >= 0; }

  void recompute_basics() {
    Vector xn = val_;
    for (int i = 0; i < m_; ++i) xn[basis_[static_cast<std::size_t>(i)]] = 0.0;
    const Vector xb = -(t_ * xn);
    for (int i = 0; i < m_; ++i) val_[basis_[static_cast<std::size_t>(i)]] = xb[i];
  }

  void recompute_reduced(const Vector& d) {
    Vector db(m_);
    for (int i = 0; i < m_; ++i) db[i] = d[basis_[static_cast<std::size_t>(i)]];
    rc_ = d - t_.transpose() * db;
  }

  // +1: can increase, -1: can decrease, 0: not eligible.
  int direction(int j) const {
    if (is_basic(j)) return 0;
    const double r = rc_[j];
    if (std::abs(r) <= opt_.opt_tol) return 0;
    if (lo_[j] == hi_[j]) return 0;
    const bool at_lo = std::isfinite(lo_[j]) && val_[j] <= lo_[j];
    const bool at_hi = std::isfinite(hi_[j]) && val_[j] >= hi_[j];
    if (r > 0 && !at_hi) return 1;
    if (r < 0 && !at_lo) return -1;
    return 0;
  }

  Outcome iterate(const Vector& d, bool phase1, long& pivots, long limit) {
    recompute_reduced(d);
    int degenerate_run = 0;
    bool bland = false;
    long local = 0;
    for (;;) {
      if (pivots >= limit) return Outcome::Limit;
      if (local > 0 && local % 100 == 0) {
        recompute_basics();
        recompute_reduced(d);
      }
      int enter = -1;
      int dir = 0;
      double best = 0.0;
      for (int j = 0; j < total_; ++j) {
        const int dj = direction(j);
        if (dj == 0) continue;
        if (bland) {
          enter = j;
          dir = dj;
          break;
        }
        if (std::abs(rc_[j]) > best) {
          best = std::abs(rc_[j]);
          enter = j;
          dir = dj;
        }
      }
      if (enter < 0) {
        // confirm with fresh reduced costs before declaring optimality
        recompute_basics();
        recompute_reduced(d);
        bool any = false;
        for (int j = 0; j < total_ && !any; ++j) any = direction(j) != 0;
        if (!any) return Outcome::Optimal;
        continue;
      }

      const double tol = opt_.feas_tol;
      const double piv_tol = 1e-9;
      // Harris two-pass ratio test
      double theta_max = kInf;
      for (int i = 0; i < m_; ++i) {
        const double tij = t_(i, enter);
        if (std::abs(tij) < piv_tol) continue;
        const double alpha = -tij * dir;
        const int b = basis_[static_cast<std::size_t>(i)];
        double r = kInf;
        if (alpha < 0 && std::isfinite(lo_[b])) r = (val_[b] - lo_[b] + tol) / -alpha;
        if (alpha > 0 && std::isfinite(hi_[b])) r = (hi_[b] - val_[b] + tol) / alpha;
        theta_max = std::min(theta_max, r);
      }
      const double span = hi_[enter] - lo_[enter];
      int leave = -1;
      double theta = kInf;
      double best_piv = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double tij = t_(i, enter);
        if (std::abs(tij) < piv_tol) continue;
        const double alpha = -tij * dir;
        const int b = basis_[static_cast<std::size_t>(i)];
        double r = kInf;
        if (alpha < 0 && std::isfinite(lo_[b])) r = std::max(0.0, (val_[b] - lo_[b]) / -alpha);
        if (alpha > 0 && std::isfinite(hi_[b])) r = std::max(0.0, (hi_[b] - val_[b]) / alpha);
        if (r > theta_max) continue;
        const bool better = bland ? (leave < 0 || b < basis_[static_cast<std::size_t>(leave)]) : std::abs(tij) > best_piv;
        if (better) {
          best_piv = std::abs(tij);
          leave = i;
          theta = r;
        }
      }
      if (leave < 0 && !std::isfinite(span)) {
        if (phase1) {
          // cannot happen with a bounded phase-1 objective; treat as numerical trouble
          return Outcome::Limit;
        }
        return Outcome::Unbounded;
      }
      ++pivots;
      ++local;
      const bool flip = std::isfinite(span) && (leave < 0 || span <= theta);
      const double step = flip ? span : theta;
      if (step <= 1e-12) {
        if (++degenerate_run > 50) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      for (int i = 0; i < m_; ++i) val_[basis_[static_cast<std::size_t>(i)]] -= t_(i, enter) * dir * step;
      val_[enter] += dir * step;
      if (flip) {
        val_[enter] = dir > 0 ? hi_[enter] : lo_[enter];
        continue;
      }
      const int out = basis_[static_cast<std::size_t>(leave)];
      const double alpha = -t_(leave, enter) * dir;
      val_[out] = alpha < 0 ? lo_[out] : hi_[out];
      pivot(leave, enter);
      if (phase1 && out >= n_ + m_) {
        // a departed artificial never re-enters
        lo_[out] = 0.0;
        hi_[out] = 0.0;
        val_[out] = 0.0;
      }
    }
  }

  void pivot(int r, int j) {
    const double p = t_(r, j);
    t_.row(r) /= p;
    Vector col = t_.col(j);
    col[r] = 0.0;
    const Eigen::RowVectorXd prow = t_.row(r);
    t_.noalias() -= col * prow;
    t_.col(j).setZero();
    t_(r, j) = 1.0;
    const double rj = rc_[j];
    rc_ -= rj * prow.transpose();
    rc_[j] = 0.0;
    make_basic(r, j);
  }

  int m_;
  int n_;
  int num_art_ = 0;
  int total_ = 0;
  LpOptions opt_;
  Matrix t_;
  Vector lo_, hi_, val_, cost_, rc_;
  std::vector<int> basis_;
  std::vector<int> row_of_;
};

// ---------------------------------------------------------------------------
// Presolve: empty rows, singleton rows (turned into column bounds), fixed and
// empty columns, and zero-cost column singletons (folded into their row's
// range, recovered in postsolve).

struct Postsolve {
  int col = 0;
  int row = 0;
  double coef = 0.0;
  double row_lo = 0.0;
  double row_hi = 0.0;
  double col_lo = 0.0;
  double col_hi = 0.0;
  std::vector<std::pair<int, double>> rest;  // other columns active in the row at that time
};

class Presolver {
 public:
  Presolver(const LpModel& lp, double tol, double elastic) : lp_(lp), tol_(tol), elastic_(elastic) {
    const int m = lp.num_rows();
    const int n = lp.num_cols();
    rows_.resize(static_cast<std::size_t>(m));
    cols_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < m; ++i) {
      for (SparseRowMatrix::InnerIterator it(lp.a, i); it; ++it) {
        if (std::abs(it.value()) <= kZero) continue;
        rows_[static_cast<std::size_t>(i)].emplace_back(static_cast<int>(it.col()), it.value());
        cols_[static_cast<std::size_t>(it.col())].emplace_back(i, it.value());
      }
    }
    row_lo_ = lp.row_lower;
    row_hi_ = lp.row_upper;
    col_lo_ = lp.col_lower;
    col_hi_ = lp.col_upper;
    x_ = Vector::Zero(n);
    row_active_.assign(static_cast<std::size_t>(m), 1);
    col_active_.assign(static_cast<std::size_t>(n), 1);
    row_count_.resize(static_cast<std::size_t>(m));
    col_count_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < m; ++i) row_count_[static_cast<std::size_t>(i)] = static_cast<int>(rows_[static_cast<std::size_t>(i)].size());
    for (int j = 0; j < n; ++j) col_count_[static_cast<std::size_t>(j)] = static_cast<int>(cols_[static_cast<std::size_t>(j)].size());
  }

  // false when infeasibility was detected.
  bool run() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int j = 0; j < lp_.num_cols(); ++j) {
        if (!col_active_[static_cast<std::size_t>(j)]) continue;
        if (col_lo_[j] > col_hi_[j] + bound_tol(col_lo_[j])) return false;
        if (std::isfinite(col_lo_[j]) && col_hi_[j] - col_lo_[j] <= kZero * (1.0 + std::abs(col_lo_[j]))) {
          fix_column(j, 0.5 * (col_lo_[j] + col_hi_[j]));
          changed = true;
        } else if (col_count_[static_cast<std::size_t>(j)] == 0) {
          empty_column(j);
          changed = true;
        } else if (col_count_[static_cast<std::size_t>(j)] == 1 && lp_.cost[j] == 0.0) {
          eliminate_singleton_column(j);
          changed = true;
        }
      }
      for (int i = 0; i < lp_.num_rows(); ++i) {
        if (!row_active_[static_cast<std::size_t>(i)]) continue;
        const int cnt = row_count_[static_cast<std::size_t>(i)];
        if (std::isinf(row_lo_[i]) && std::isinf(row_hi_[i])) {
          drop_row(i);
          changed = true;
        } else if (cnt == 0) {
          if (row_lo_[i] > bound_tol(row_lo_[i]) + elastic_ || row_hi_[i] < -bound_tol(row_hi_[i]) - elastic_)
            return false;
          drop_row(i);
          changed = true;
        } else if (cnt == 1) {
          if (!singleton_row(i)) return false;
          changed = true;
        }
      }
    }
    return true;
  }

  bool unbounded_ray() const { return ray_; }

  // Reduced problem over the remaining active rows and columns.
  void reduced(Matrix& a, Vector& rlo, Vector& rhi, Vector& c, Vector& lo, Vector& hi) {
    row_map_.clear();
    col_map_.clear();
    std::vector<int> col_index(static_cast<std::size_t>(lp_.num_cols()), -1);
    for (int j = 0; j < lp_.num_cols(); ++j)
      if (col_active_[static_cast<std::size_t>(j)]) {
        col_index[static_cast<std::size_t>(j)] = static_cast<int>(col_map_.size());
        col_map_.push_back(j);
      }
    for (int i = 0; i < lp_.num_rows(); ++i)
      if (row_active_[static_cast<std::size_t>(i)]) row_map_.push_back(i);
    const int m = static_cast<int>(row_map_.size());
    const int n = static_cast<int>(col_map_.size());
    a = Matrix::Zero(m, n);
    rlo.resize(m);
    rhi.resize(m);
    for (int r = 0; r < m; ++r) {
      const int i = row_map_[static_cast<std::size_t>(r)];
      rlo[r] = row_lo_[i];
      rhi[r] = row_hi_[i];
      for (const auto& [j, v] : rows_[static_cast<std::size_t>(i)])
        if (col_active_[static_cast<std::size_t>(j)]) a(r, col_index[static_cast<std::size_t>(j)]) = v;
    }
    c.resize(n);
    lo.resize(n);
    hi.resize(n);
    for (int k = 0; k < n; ++k) {
      const int j = col_map_[static_cast<std::size_t>(k)];
      c[k] = lp_.cost[j];
      lo[k] = col_lo_[j];
      hi[k] = col_hi_[j];
    }
  }

  Vector postsolve(const Vector& reduced_x) {
    for (std::size_t k = 0; k < col_map_.size(); ++k) x_[col_map_[k]] = reduced_x[static_cast<Eigen::Index>(k)];
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      double rest = 0.0;
      for (const auto& [j, v] : it->rest) rest += v * x_[j];
      double lo = it->col_lo;
      double hi = it->col_hi;
      double a_lo = (it->row_lo - rest) / it->coef;
      double a_hi = (it->row_hi - rest) / it->coef;
      if (it->coef < 0) std::swap(a_lo, a_hi);
      lo = std::max(lo, a_lo);
      hi = std::min(hi, a_hi);
      double v = 0.0;
      if (lo <= hi)
        v = clamp_to(0.0, lo, hi);
      else
        v = std::isfinite(a_lo) ? clamp_to(a_lo, it->col_lo, it->col_hi) : clamp_to(a_hi, it->col_lo, it->col_hi);
      x_[it->col] = v;
    }
    return x_;
  }

 private:
  double bound_tol(double b) const { return tol_ * (1.0 + std::abs(std::isfinite(b) ? b : 0.0)); }

  void fix_column(int j, double v) {
    x_[j] = v;
    col_active_[static_cast<std::size_t>(j)] = 0;
    for (const auto& [i, a] : cols_[static_cast<std::size_t>(j)]) {
      if (!row_active_[static_cast<std::size_t>(i)]) continue;
      row_lo_[i] -= a * v;
      row_hi_[i] -= a * v;
      --row_count_[static_cast<std::size_t>(i)];
    }
  }

  void empty_column(int j) {
    const double c = lp_.cost[j];
    double v = clamp_to(0.0, col_lo_[j], col_hi_[j]);
    if (c > 0) {
      if (std::isinf(col_hi_[j]))
        ray_ = true;
      else
        v = col_hi_[j];
    } else if (c < 0) {
      if (std::isinf(col_lo_[j]))
        ray_ = true;
      else
        v = col_lo_[j];
    }
    x_[j] = v;
    col_active_[static_cast<std::size_t>(j)] = 0;
  }

  void eliminate_singleton_column(int j) {
    int row = -1;
    double a = 0.0;
    for (const auto& [i, v] : cols_[static_cast<std::size_t>(j)])
      if (row_active_[static_cast<std::size_t>(i)]) {
        row = i;
        a = v;
      }
    Postsolve rec;
    rec.col = j;
    rec.row = row;
    rec.coef = a;
    rec.row_lo = row_lo_[row];
    rec.row_hi = row_hi_[row];
    rec.col_lo = col_lo_[j];
    rec.col_hi = col_hi_[j];
    for (const auto& [k, v] : rows_[static_cast<std::size_t>(row)])
      if (k != j && col_active_[static_cast<std::size_t>(k)]) rec.rest.emplace_back(k, v);
    double t_lo = a * col_lo_[j];
    double t_hi = a * col_hi_[j];
    if (a < 0) std::swap(t_lo, t_hi);
    row_lo_[row] = lower_minus(row_lo_[row], t_hi);
    row_hi_[row] = upper_minus(row_hi_[row], t_lo);
    stack_.push_back(std::move(rec));
    col_active_[static_cast<std::size_t>(j)] = 0;
    --row_count_[static_cast<std::size_t>(row)];
  }

  void drop_row(int i) {
    row_active_[static_cast<std::size_t>(i)] = 0;
    for (const auto& [j, v] : rows_[static_cast<std::size_t>(i)])
      if (col_active_[static_cast<std::size_t>(j)]) --col_count_[static_cast<std::size_t>(j)];
  }

  bool singleton_row(int i) {
    int j = -1;
    double a = 0.0;
    for (const auto& [k, v] : rows_[static_cast<std::size_t>(i)])
      if (col_active_[static_cast<std::size_t>(k)]) {
        j = k;
        a = v;
      }
    double lo = row_lo_[i] / a;
    double hi = row_hi_[i] / a;
    if (a < 0) std::swap(lo, hi);
    if (std::isnan(lo)) lo = -kInf;
    if (std::isnan(hi)) hi = kInf;
    drop_row(i);
    if (elastic_ > 0.0 && (lo > col_hi_[j] || hi < col_lo_[j])) {
      // violate the row, never the column bounds
      const double x = lo > col_hi_[j] ? col_hi_[j] : col_lo_[j];
      const double gap = lo > col_hi_[j] ? lo - col_hi_[j] : col_lo_[j] - hi;
      if (gap * std::abs(a) > elastic_ + bound_tol(x)) return false;
      col_lo_[j] = col_hi_[j] = x;
      return true;
    }
    col_lo_[j] = std::max(col_lo_[j], lo);
    col_hi_[j] = std::min(col_hi_[j], hi);
    if (col_lo_[j] > col_hi_[j]) {
      if (col_lo_[j] > col_hi_[j] + bound_tol(col_lo_[j])) return false;
      const double mid = 0.5 * (col_lo_[j] + col_hi_[j]);
      col_lo_[j] = col_hi_[j] = mid;
    }
    return true;
  }

  const LpModel& lp_;
  double tol_;
  double elastic_;
  std::vector<std::vector<std::pair<int, double>>> rows_;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  Vector row_lo_, row_hi_, col_lo_, col_hi_, x_;
  std::vector<char> row_active_, col_active_;
  std::vector<int> row_count_, col_count_;
  std::vector<Postsolve> stack_;
  std::vector<int> row_map_, col_map_;
  bool ray_ = false;
};

}  // namespace

LpResult solve_lp(const LpModel& lp, const LpOptions& options) {
  lp.validate();
  LpResult result;
  Presolver pre(lp, options.feas_tol, std::max(0.0, options.elastic_tol));
  if (!pre.run()) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  Matrix a;
  Vector rlo, rhi, c, lo, hi;
  pre.reduced(a, rlo, rhi, c, lo, hi);
  result.presolved_rows = static_cast<int>(a.rows());
  result.presolved_cols = static_cast<int>(a.cols());

  Vector xr(a.cols());
  if (a.rows() > 0 || a.cols() > 0) {
    const std::size_t entries = static_cast<std::size_t>(a.rows()) *
                                (static_cast<std::size_t>(a.cols()) + 2 * static_cast<std::size_t>(a.rows()));
    if (entries > options.max_tableau_entries) {
      result.status = LpStatus::Infeasible;
      result.warning = "LP too large for the dense simplex (" + std::to_string(a.rows()) + " x " +
                       std::to_string(a.cols()) + " after presolve)";
      return result;
    }
    DenseSimplex simplex(a, rlo, rhi, c, lo, hi, options);
    const LpStatus st = simplex.run(result.pivots, result.warning);
    if (st != LpStatus::Optimal) {
      result.status = st;
      return result;
    }
    xr = simplex.solution();
  }
  if (pre.unbounded_ray()) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.x = pre.postsolve(xr);
  double scale = 1.0;
  for (Eigen::Index i = 0; i < lp.row_lower.size(); ++i) {
    if (std::isfinite(lp.row_lower[i])) scale = std::max(scale, std::abs(lp.row_lower[i]));
    if (std::isfinite(lp.row_upper[i])) scale = std::max(scale, std::abs(lp.row_upper[i]));
  }
  const double viol = max_violation(lp, result.x);
  if (viol > 1e3 * options.feas_tol * scale + std::max(0.0, options.elastic_tol)) {
    result.status = LpStatus::Infeasible;
    result.warning = "solution failed verification (max violation " + std::to_string(viol) + ")";
    return result;
  }
  result.status = LpStatus::Optimal;
  result.objective = lp.cost.dot(result.x);
  return result;
}

}  // namespace adal
