#include "oracles.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace oracle {

Matrix dense(const adal::SparseSymMat& a) {
  Matrix d = Matrix::Zero(a.n(), a.n());
  for (const auto& e : a.entries()) {
    d(e.row, e.col) = e.value;
    d(e.col, e.row) = e.value;
  }
  return d;
}

ExpandedAdal::ExpandedAdal(const adal::GeneralSdp& sdp) : n_(sdp.n()), l_(sdp.l()) {
  const int big = n_ + l_;
  const int m = sdp.m();
  a_ = Matrix::Zero(m, big * big);
  for (int i = 0; i < m; ++i) {
    Matrix ai = Matrix::Zero(big, big);
    ai.topLeftCorner(n_, n_) = dense(sdp.constraints()[static_cast<std::size_t>(i)].matrix);
    if (i < l_) ai(n_ + i, n_ + i) = 1.0;
    a_.row(i) = Eigen::Map<const Vector>(ai.data(), ai.size()).transpose();
  }
  b_ = Vector(m);
  for (int i = 0; i < m; ++i) b_[i] = sdp.constraints()[static_cast<std::size_t>(i)].rhs;
  c_ = Matrix::Zero(big, big);
  c_.topLeftCorner(n_, n_) = dense(sdp.c());
  gram_.compute(a_ * a_.transpose());
  x_ = Matrix::Zero(big, big);
  z_ = Matrix::Zero(big, big);
  y_ = Vector::Zero(m);
}

void ExpandedAdal::step(double sigma) {
  const int big = order();
  const Matrix v = x_ / sigma - c_ + z_;
  const Vector rhs = b_ / sigma - a_ * Eigen::Map<const Vector>(v.data(), v.size());
  y_ = gram_.solve(rhs);
  const Vector aty = a_.transpose() * y_;
  Matrix w = x_ / sigma - c_ + Eigen::Map<const Matrix>(aty.data(), big, big);
  w = 0.5 * (w + w.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(w);
  const Matrix& q = eig.eigenvectors();
  const Vector lam = eig.eigenvalues();
  x_ = sigma * q * lam.cwiseMax(0.0).asDiagonal() * q.transpose();
  z_ = -(q * lam.cwiseMin(0.0).asDiagonal() * q.transpose());
}

std::optional<double> lp_by_vertices(const adal::LpModel& lp, double tol) {
  const int k = lp.num_cols();
  const int rows = lp.num_rows();
  const Matrix a = Matrix(lp.a);
  // hyperplanes g^T x = h
  std::vector<std::pair<Vector, double>> planes;
  for (int r = 0; r < rows; ++r) {
    if (std::isfinite(lp.row_lower[r])) planes.emplace_back(a.row(r).transpose(), lp.row_lower[r]);
    if (std::isfinite(lp.row_upper[r]) && lp.row_upper[r] != lp.row_lower[r])
      planes.emplace_back(a.row(r).transpose(), lp.row_upper[r]);
  }
  for (int j = 0; j < k; ++j) {
    planes.emplace_back(Vector::Unit(k, j), lp.col_lower[j]);
    planes.emplace_back(Vector::Unit(k, j), lp.col_upper[j]);
  }
  const int np = static_cast<int>(planes.size());
  std::optional<double> best;
  // every k-subset of the hyperplanes
  std::vector<bool> sel(static_cast<std::size_t>(np), false);
  std::fill(sel.begin(), sel.begin() + k, true);
  do {
    Matrix g(k, k);
    Vector h(k);
    int c = 0;
    for (int p = 0; p < np; ++p)
      if (sel[static_cast<std::size_t>(p)]) {
        g.row(c) = planes[static_cast<std::size_t>(p)].first.transpose();
        h[c] = planes[static_cast<std::size_t>(p)].second;
        ++c;
      }
    Eigen::FullPivLU<Matrix> lu(g);
    if (lu.rank() < k) continue;
    const Vector x = lu.solve(h);
    bool ok = true;
    for (int j = 0; j < k && ok; ++j)
      ok = x[j] >= lp.col_lower[j] - tol * (1 + std::abs(x[j])) && x[j] <= lp.col_upper[j] + tol * (1 + std::abs(x[j]));
    const Vector ax = a * x;
    for (int r = 0; r < rows && ok; ++r)
      ok = ax[r] >= lp.row_lower[r] - tol * (1 + std::abs(ax[r])) && ax[r] <= lp.row_upper[r] + tol * (1 + std::abs(ax[r]));
    if (!ok) continue;
    const double obj = lp.cost.dot(x);
    if (!best || obj > *best) best = obj;
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return best;
}

std::vector<std::vector<std::pair<double, double>>> profile_by_counting(const std::vector<std::vector<double>>& times) {
  const std::size_t np = times.size();
  const std::size_t ns = times.front().size();
  auto ok = [](double t) { return std::isfinite(t) && t >= 0.0; };
  std::vector<std::vector<double>> r(np, std::vector<double>(ns, std::numeric_limits<double>::infinity()));
  for (std::size_t p = 0; p < np; ++p) {
    double best = std::numeric_limits<double>::infinity();
    for (double t : times[p])
      if (ok(t)) best = std::min(best, std::max(t, 1e-6));
    for (std::size_t s = 0; s < ns; ++s)
      if (ok(times[p][s])) r[p][s] = std::max(times[p][s], 1e-6) / best;
  }
  std::vector<std::vector<std::pair<double, double>>> out(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    std::set<double> taus;
    for (std::size_t p = 0; p < np; ++p)
      if (std::isfinite(r[p][s])) taus.insert(r[p][s]);
    for (double tau : taus) {
      std::size_t count = 0;
      for (std::size_t p = 0; p < np; ++p)
        if (r[p][s] <= tau) ++count;
      out[s].emplace_back(tau, static_cast<double>(count) / static_cast<double>(np));
    }
  }
  return out;
}

Matrix random_symmetric(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  Matrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) a(i, j) = a(j, i) = nd(rng);
  return a;
}

adal::GeneralSdp random_sdp(std::mt19937_64& rng, int n, int m, int l, bool with_mask) {
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> pos(0, n - 1);
  auto sparse = [&](int count) {
    std::vector<adal::SymEntry> e;
    std::set<std::pair<int, int>> used;
    while (static_cast<int>(e.size()) < count) {
      int i = pos(rng), j = pos(rng);
      if (i > j) std::swap(i, j);
      if (!used.insert({i, j}).second) continue;
      e.push_back({i, j, nd(rng)});
    }
    return adal::SparseSymMat(n, std::move(e));
  };
  const int cells = n * (n + 1) / 2;
  if (m - l > cells) throw std::invalid_argument("random_sdp: more equalities than matrix entries");
  for (;;) {
    std::vector<adal::Constraint> cons;
    for (int i = 0; i < m; ++i)
      cons.push_back({sparse(std::min(cells, 1 + static_cast<int>(rng() % 4))), nd(rng),
                      i < l ? adal::RowSense::Le : adal::RowSense::Eq});
    Matrix g(m, m);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k)
        g(i, k) = (dense(cons[static_cast<std::size_t>(i)].matrix).array() *
                   dense(cons[static_cast<std::size_t>(k)].matrix).array())
                      .sum();
    for (int i = 0; i < l; ++i) g(i, i) += 1.0;
    if (m > 0 && min_eig(g) < 1e-6) continue;
    std::vector<adal::Position> mask;
    if (with_mask)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i <= j; ++i)
          if (rng() % 2) mask.push_back({i, j});
    return adal::GeneralSdp(n, sparse(std::min(cells, n)), adal::Sense::Min, std::move(cons), std::move(mask));
  }
}

adal::Graph p_hat_like(int n, double lo, double hi, std::uint64_t seed, const std::string& name) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi), coin(0.0, 1.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = u(rng);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < 0.5 * (w[static_cast<std::size_t>(i)] + w[static_cast<std::size_t>(j)])) edges.emplace_back(i, j);
  return adal::Graph(n, std::move(edges), name);
}

double min_eig(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()[0];
}

}  // namespace oracle
