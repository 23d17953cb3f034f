#include "adal/dual_bound.hpp"
#include "adal/psd.hpp"
#include "adal/randgen.hpp"
#include "adal/relaxations.hpp"
#include "adal/solver.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace adal;

namespace {

SparseSymMat scalar(double v) { return SparseSymMat(1, {{0, 0, v}}); }

GeneralSdp tiny_eq() { return GeneralSdp(1, scalar(2.0), Sense::Min, {{scalar(1.0), 1.0, RowSense::Eq}}); }
GeneralSdp tiny_le() { return GeneralSdp(1, scalar(-1.0), Sense::Min, {{scalar(1.0), 3.0, RowSense::Le}}); }

Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

void check_certificate(const GeneralSdp& sdp, const DualBound& b, double tol) {
  REQUIRE(b.z_hat);
  CHECK(oracle::min_eig(b.z_hat->dense()) >= 0.0);
  CHECK(certificate_residual(sdp, *b.z_hat, b.lambda, b.mu, b.s_values) <= 2.0 * tol);
  if (b.lambda.size() > 0) CHECK(b.lambda.minCoeff() >= -1e-9);
  if (b.s_values.size() > 0) CHECK(b.s_values.minCoeff() >= -1e-9);
}

}  // namespace

TEST_CASE("psd_repair examples") {
  CHECK(psd_repair(SymMat::identity(2)).dense() == Matrix::Identity(2, 2));

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1e-12;
  const SymMat r = psd_repair(SymMat::from_dense(d));
  CHECK(std::abs(r(0, 0) - 1.0) <= 1e-14);
  CHECK(std::abs(r(1, 1)) <= 1e-14);
  CHECK(oracle::min_eig(r.dense()) >= 0.0);

  Matrix w(2, 2);
  w << 0.0, 1.0, 1.0, 0.0;
  const SymMat h = psd_repair(SymMat::from_dense(w));
  CHECK((h.dense() - Matrix::Constant(2, 2, 0.5)).norm() <= 1e-14);
}

TEST_CASE("psd_repair is a small move onto the psd cone") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const Matrix z = oracle::random_symmetric(rng, n);
    const SymMat h = psd_repair(SymMat::from_dense(z));
    const double lmin = oracle::min_eig(z);
    CHECK(oracle::min_eig(h.dense()) >= 0.0);
    if (lmin < 0.0)
      CHECK((h.dense() - z).norm() <= std::abs(lmin) * std::sqrt(static_cast<double>(n)) + 1e-12);
    else
      CHECK(h.dense() == z);
  }
}

TEST_CASE("bound LP for min -x s.t. x <= 3") {
  const GeneralSdp sdp = tiny_le();
  const BoundLp lp = build_bound_lp(sdp, SymMat(1));
  CHECK(lp.num_lambda == 1);
  CHECK(lp.num_mu == 0);
  CHECK(lp.num_s == 0);
  REQUIRE(lp.rows.size() == 1);
  CHECK(lp.rhs()[0] == doctest::Approx(1.0));  // Z - C at (1,1)
  const BoundLpSolution sol = solve_bound_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.lambda[0] == doctest::Approx(1.0));
  const DualBound b = recover_bound(sdp, SymMat(1));
  REQUIRE(b.certified());
  CHECK(b.value == doctest::Approx(-3.0));
  check_certificate(sdp, b, 1e-5);
}

TEST_CASE("bound LP for min 2x s.t. x = 1") {
  const BoundLp lp = build_bound_lp(tiny_eq(), SymMat(1));
  CHECK(lp.num_mu == 1);
  const BoundLpSolution sol = solve_bound_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.mu[0] == doctest::Approx(2.0));
  const DualBound b = recover_bound(tiny_eq(), SymMat(1));
  REQUIRE(b.certified());
  CHECK(b.value == doctest::Approx(2.0));
}

TEST_CASE("a Z_hat entry outside every support makes the LP infeasible") {
  const SparseSymMat eye2(2, {{0, 0, 1.0}, {1, 1, 1.0}});
  const GeneralSdp sdp(2, eye2, Sense::Min, {{eye2, 1.0, RowSense::Eq}});
  Matrix z(2, 2);
  z << 1.0, 0.5, 0.5, 1.0;
  const BoundLp lp = build_bound_lp(sdp, SymMat::from_dense(z));
  CHECK(lp.rows.size() == 3);
  const DualBound b = recover_bound(sdp, SymMat::from_dense(z));
  CHECK(b.status == BoundStatus::LpInfeasible);
  CHECK_FALSE(b.certified());
}

TEST_CASE("an unbounded LP flags primal infeasibility") {
  // trace(X) <= -1 has no psd solution; lambda can grow with S on the diagonal
  const SparseSymMat eye2(2, {{0, 0, 1.0}, {1, 1, 1.0}});
  const GeneralSdp sdp(2, SparseSymMat(2, {}), Sense::Min, {{eye2, -1.0, RowSense::Le}}, {{0, 0}, {1, 1}});
  CHECK(recover_bound(sdp, SymMat(2)).status == BoundStatus::LpUnbounded);
}

TEST_CASE("maximization problems get an upper bound") {
  const GeneralSdp sdp(1, scalar(2.0), Sense::Max, {{scalar(1.0), 1.0, RowSense::Le}}, {}, 0.5);
  const DualBound b = recover_bound(sdp, SymMat(1));
  REQUIRE(b.certified());
  CHECK(b.value == doctest::Approx(2.5));
}

TEST_CASE("theta+ of the 4-cycle is certified at 2") {
  const GeneralSdp sdp = build_theta_plus(cycle(4));
  SolverConfig cfg;
  cfg.eps = 1e-6;
  const SolverResult r = solve(sdp, cfg);
  REQUIRE(r.status == SolverStatus::Converged);
  const DualBound b = recover_bound(sdp, r.state.Z);
  REQUIRE(b.certified());
  CHECK(std::abs(b.value - 2.0) <= 1e-3);
  CHECK(b.value >= 2.0 - 10.0 * 1e-5 * 3.0);
  check_certificate(sdp, b, 1e-5);
}

TEST_CASE("an early identity Z_hat does not crash") {
  const GeneralSdp sdp = build_theta(cycle(5));
  const DualBound b = recover_bound(sdp, SymMat::identity(5));
  if (b.certified()) CHECK(b.value >= std::sqrt(5.0) - 1e-4);
}

TEST_CASE("certified bounds on analytic theta instances respect weak duality") {
  const double tol = 1e-5;
  std::vector<std::pair<Graph, double>> maxes = {{cycle(5), std::sqrt(5.0)}, {Graph(6, {}), 6.0}};
  {
    std::vector<std::pair<int, int>> k;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) k.emplace_back(i, j);
    maxes.emplace_back(Graph(6, k), 1.0);
  }
  int certified = 0;
  auto run = [&](const GeneralSdp& sdp, double v) {
    SolverConfig cfg;
    cfg.eps = 1e-6;
    cfg.postprocess_every = 10;
    BoundOptions opt;
    opt.tol = tol;
    solve(sdp, cfg, [&](const BoundRequest& req) -> std::optional<DualBound> {
      DualBound b = recover_bound(req.sdp, req.z, opt);
      if (b.certified()) {
        ++certified;
        if (sdp.sense() == Sense::Max)
          CHECK(b.value >= v - 10.0 * tol * (1.0 + std::abs(v)));
        else
          CHECK(b.value <= v + 10.0 * tol * (1.0 + std::abs(v)));
        check_certificate(req.sdp, b, tol);
      }
      return b;
    });
  };
  for (const auto& [g, v] : maxes) {
    run(build_theta(g), v);
    run(build_theta_plus(g), v);
  }
  // coloring bound of the complete graph is n
  std::vector<std::pair<int, int>> k5;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) k5.emplace_back(i, j);
  run(build_theta_bar_plus(Graph(5, k5)), 5.0);
  run(build_theta_bar_plus(cycle(5)), std::sqrt(5.0));
  CHECK(certified >= 10);
}

TEST_CASE("exact-row mode and the external adapter") {
  BoundOptions plain;
  plain.tighten = false;
  const DualBound a = recover_bound(tiny_le(), SymMat(1), plain);
  REQUIRE(a.certified());
  CHECK(a.value == doctest::Approx(-3.0));

  BoundOptions ext;
  ext.external_lp = std::string(ADAL_TOOL) + " lp-solve";
  const GeneralSdp sdp = build_theta_plus(cycle(4));
  SolverConfig cfg;
  cfg.eps = 1e-6;
  const SolverResult r = solve(sdp, cfg);
  const DualBound in = recover_bound(sdp, r.state.Z);
  const DualBound ex = recover_bound(sdp, r.state.Z, ext);
  REQUIRE(ex.certified());
  CHECK(std::abs(ex.value - 2.0) <= 1e-3);
  CHECK(std::abs(ex.value - in.value) <= 10.0 * 1e-5);
  check_certificate(sdp, ex, 1e-5);
}
