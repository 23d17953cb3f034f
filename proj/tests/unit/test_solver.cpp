#include "adal/errors.hpp"
#include "adal/randgen.hpp"
#include "adal/relaxations.hpp"
#include "adal/solver.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

using namespace adal;

namespace {

SparseSymMat scalar(double v) { return SparseSymMat(1, {{0, 0, v}}); }

// min 2x  s.t.  x = 1
GeneralSdp tiny_eq() { return GeneralSdp(1, scalar(2.0), Sense::Min, {{scalar(1.0), 1.0, RowSense::Eq}}); }

// min -x  s.t.  x <= 3
GeneralSdp tiny_le() { return GeneralSdp(1, scalar(-1.0), Sense::Min, {{scalar(1.0), 3.0, RowSense::Le}}); }

SparseSymMat eye(int n) {
  std::vector<SymEntry> e;
  for (int i = 0; i < n; ++i) e.push_back({i, i, 1.0});
  return SparseSymMat(n, std::move(e));
}

Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

}  // namespace

TEST_CASE("factorize_gram examples") {
  const GramFactor a = factorize_gram(GeneralSdp(2, eye(2), Sense::Min, {{eye(2), 1.0, RowSense::Eq}}));
  CHECK(a.shifted_gram()(0, 0) == doctest::Approx(2.0));
  const GramFactor b = factorize_gram(tiny_le());
  CHECK(b.shifted_gram()(0, 0) == doctest::Approx(2.0));
  Vector r(1);
  r << 4.0;
  CHECK(b.solve(r)[0] == doctest::Approx(2.0));
  CHECK_THROWS_AS(
      factorize_gram(GeneralSdp(2, eye(2), Sense::Min, {{eye(2), 1.0, RowSense::Eq}, {eye(2), 1.0, RowSense::Eq}})),
      FactorizationFailed);
}

TEST_CASE("y_update examples") {
  const GeneralSdp sdp = tiny_eq();
  const GramFactor f = factorize_gram(sdp);
  SolverState st = SolverState::initial(sdp, 1.0);
  st.X = SymMat::identity(1);
  // Gram = [1]: y = 1 * (b - A(X - C + Z)) = 1 - (1 - 2), already the optimal multiplier
  CHECK(y_update(st, sdp, f)[0] == doctest::Approx(2.0));

  std::mt19937_64 rng(2);
  const GeneralSdp r = oracle::random_sdp(rng, 5, 6, 2);
  const GramFactor fr = factorize_gram(r);
  const Vector expect = fr.solve(r.b() + apply_A(r, SymMat::from_dense(r.c().to_dense())));
  CHECK((y_update(SolverState::initial(r, 1.0), r, fr) - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
}

TEST_CASE("y_update is a fixed point at a generated optimum") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GeneratedSdp g = generate({.n = 8, .m = 12, .p = 0.5, .density = 6, .seed = seed});
    const GramFactor f = factorize_gram(g.sdp);
    for (double sigma : {0.3, 1.0, 7.0}) {
      const Vector y = y_update(witness_state(g.witness, sigma), g.sdp, f);
      CHECK((y - g.witness.y).norm() <= 1e-10 * (1.0 + g.witness.y.norm()));
    }
  }
}

TEST_CASE("build_W examples") {
  {
    const GeneralSdp sdp(2, SparseSymMat(2, {}), Sense::Min, {{eye(2), 1.0, RowSense::Le}});
    const WBlocks w = build_W(SolverState::initial(sdp, 1.0), sdp, Vector::Zero(1));
    CHECK(w.core.dense().norm() == 0.0);
    CHECK(w.slack.norm() == 0.0);
  }
  {
    const GeneralSdp sdp(1, scalar(1.0), Sense::Min, {{scalar(1.0), 1.0, RowSense::Eq}});
    SolverState st = SolverState::initial(sdp, 2.0);
    st.X.set(0, 0, 2.0);
    const WBlocks w = build_W(st, sdp, Vector::Ones(1));
    CHECK(w.core(0, 0) == doctest::Approx(1.0));
  }
  {
    const GeneralSdp sdp = tiny_le();
    SolverState st = SolverState::initial(sdp, 2.0);
    st.s[0] = 4.0;
    Vector y(1);
    y << -3.0;
    CHECK(build_W(st, sdp, y).slack[0] == doctest::Approx(-1.0));
  }
}

TEST_CASE("zx_update examples") {
  SolverState st = SolverState::initial(tiny_le(), 2.0);
  st.X = SymMat(2);
  st.Z = SymMat(2);
  Matrix w = Matrix::Zero(2, 2);
  w(0, 0) = 3.0;
  w(1, 1) = -2.0;
  Vector slack(2);
  slack << -1.0, 0.5;
  zx_update(st, SymMat::from_dense(w), slack, 2.0);
  CHECK(st.Z(0, 0) == doctest::Approx(0.0));
  CHECK(st.Z(1, 1) == doctest::Approx(2.0));
  CHECK(st.X(0, 0) == doctest::Approx(6.0));
  CHECK(st.X(1, 1) == doctest::Approx(0.0));
  CHECK(st.p[0] == 1.0);
  CHECK(st.p[1] == 0.0);
  CHECK(st.s[0] == 0.0);
  CHECK(st.s[1] == 1.0);

  Matrix psd(2, 2);
  psd << 2.0, 1.0, 1.0, 2.0;
  zx_update(st, SymMat::from_dense(psd), Vector::Zero(0), 0.5);
  CHECK(st.Z.dense().norm() <= 1e-14);
  CHECK((st.X.dense() - 0.5 * psd).norm() <= 1e-14);
}

TEST_CASE("s_update_3block examples") {
  const GeneralSdp masked(1, scalar(2.0), Sense::Min, {{scalar(1.0), 1.0, RowSense::Eq}}, {{0, 0}});
  SolverState st = SolverState::initial(masked, 1.0);
  Vector y(1);
  y << 0.5;
  CHECK(s_update_3block(st, masked, y, st.Z)(0, 0) == doctest::Approx(1.5));
  y << 3.0;
  CHECK(s_update_3block(st, masked, y, st.Z)(0, 0) == 0.0);

  const GeneralSdp plain(2, SparseSymMat(2, {{0, 1, 5.0}}), Sense::Min, {{eye(2), 1.0, RowSense::Eq}});
  const SolverState ps = SolverState::initial(plain, 1.0);
  CHECK(s_update_3block(ps, plain, Vector::Zero(1), ps.Z).dense().norm() == 0.0);

  // only masked positions receive mass
  const GeneralSdp part(2, SparseSymMat(2, {{0, 0, 1.0}, {0, 1, 1.0}}), Sense::Min, {{eye(2), 1.0, RowSense::Eq}},
                        {{0, 1}});
  const SolverState qs = SolverState::initial(part, 1.0);
  const SymMat s = s_update_3block(qs, part, Vector::Zero(1), qs.Z);
  CHECK(s(0, 0) == 0.0);
  CHECK(s(0, 1) == doctest::Approx(1.0));
  CHECK(s(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("residuals examples") {
  const GeneralSdp sdp = tiny_eq();
  const SolverState zero = SolverState::initial(sdp, 1.0);
  CHECK(residuals(zero, sdp).r_p == doctest::Approx(0.5));

  SolverState dual = zero;
  dual.Z.set(0, 0, 2.0);
  CHECK(residuals(dual, sdp).r_d == doctest::Approx(0.0));

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GeneratedSdp g = generate({.n = 10, .m = 15, .p = 0.4, .density = 8, .seed = seed});
    const Residuals r = residuals(witness_state(g.witness), g.sdp);
    CHECK(r.r_p <= 1e-9);
    CHECK(r.r_d <= 1e-9);
  }
}

TEST_CASE("sigma_update examples") {
  SolverState st = SolverState::initial(tiny_eq(), 0.7);
  st.X.set(0, 0, 4.0);
  st.Z.set(0, 0, 2.0);
  CHECK(sigma_update(st) == doctest::Approx(2.0));
  st.Z.set(0, 0, 0.0);
  CHECK(sigma_update(st) == 0.7);
  st.Z.set(0, 0, 4.0);
  CHECK(sigma_update(st) == doctest::Approx(1.0));
  st.X.set(0, 0, 1e9);
  st.Z.set(0, 0, 1.0);
  CHECK(sigma_update(st) == 1e6);
}

TEST_CASE("solve: min 2x s.t. x = 1") {
  SolverConfig cfg;
  cfg.eps = 1e-9;
  const SolverResult r = solve(tiny_eq(), cfg);
  CHECK(r.status == SolverStatus::Converged);
  CHECK(r.delta <= 1e-8);
  CHECK(r.primal_obj == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(r.state.y[0] == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(std::abs(r.state.Z(0, 0)) <= 1e-7);
}

TEST_CASE("solve: min -x s.t. x <= 3") {
  SolverConfig cfg;
  cfg.eps = 1e-9;
  const SolverResult r = solve(tiny_le(), cfg);
  CHECK(r.status == SolverStatus::Converged);
  CHECK(r.primal_obj == doctest::Approx(-3.0).epsilon(1e-6));
  CHECK(r.state.y[0] <= 0.0);
  CHECK(r.state.y[0] == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("solve: theta of the 5-cycle") {
  SolverConfig cfg;
  cfg.eps = 1e-6;
  const SolverResult r = solve(build_theta(cycle(5)), cfg);
  CHECK(r.status == SolverStatus::Converged);
  CHECK(std::abs(r.primal_obj - std::sqrt(5.0)) <= 1e-3);
  CHECK(std::abs(r.dual_obj - std::sqrt(5.0)) <= 1e-3);
}

TEST_CASE("per-iteration cone invariants in 2-block mode") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const GeneratedSdp g = generate({.n = 12, .m = 20, .p = 0.5, .density = 8, .seed = seed});
    AdalSolver solver(g.sdp, SolverConfig{});
    REQUIRE_FALSE(solver.three_block());
    for (int it = 0; it < 150; ++it) {
      solver.step();
      const SolverState st = solver.state();
      const double nx = st.X.dense().norm(), nz = st.Z.dense().norm();
      CHECK(oracle::min_eig(st.X.dense()) >= -1e-8 * nx);
      CHECK(oracle::min_eig(st.Z.dense()) >= -1e-8 * nz);
      CHECK(std::abs(inner(st.Z, st.X)) / (1.0 + nz * nx) <= 1e-8);
      for (int i = 0; i < g.sdp.l(); ++i) {
        CHECK(st.s[i] >= 0.0);
        CHECK(st.p[i] >= 0.0);
        CHECK(st.s[i] * st.p[i] == 0.0);
      }
      CHECK(st.S.dense().norm() == 0.0);
    }
  }
}

TEST_CASE("3-block mode keeps Z psd and S nonnegative on the mask only") {
  const GeneralSdp sdp = build_theta_plus(cycle(7));
  std::vector<std::vector<bool>> masked(7, std::vector<bool>(7, false));
  for (const auto& pos : sdp.nonneg_mask()) masked[pos.row][pos.col] = masked[pos.col][pos.row] = true;
  AdalSolver solver(sdp, SolverConfig{});
  REQUIRE(solver.three_block());
  for (int it = 0; it < 100; ++it) {
    solver.step();
    const SolverState st = solver.state();
    CHECK(oracle::min_eig(st.Z.dense()) >= -1e-8 * st.Z.dense().norm());
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        CHECK(st.S(i, j) >= 0.0);
        if (!masked[i][j]) CHECK(st.S(i, j) == 0.0);
      }
  }
}

TEST_CASE("best bound keeps the best value seen, in the problem's own sense") {
  // Fabricated certified values, deliberately not monotone.
  const std::vector<double> values = {1.0, 3.0, 2.0, 2.5, 0.5};
  const GeneratedSdp g = generate({.n = 8, .m = 10, .p = 0.5, .density = 6, .seed = 4});
  for (Sense sense : {Sense::Min, Sense::Max}) {
    const GeneralSdp sdp(g.sdp.n(), g.sdp.c(), sense, {g.sdp.constraints().begin(), g.sdp.constraints().end()});
    SolverConfig cfg;
    cfg.eps = 1e-14;
    cfg.max_iter = 10;
    cfg.postprocess_every = 2;
    std::size_t calls = 0;
    std::vector<int> iters;
    const SolverResult r = solve(sdp, cfg, [&](const BoundRequest& req) -> std::optional<DualBound> {
      iters.push_back(req.iter);
      DualBound b;
      b.status = BoundStatus::Certified;
      b.value = values[calls++ % values.size()];
      return b;
    });
    REQUIRE(calls == 5);
    CHECK(iters == std::vector<int>{2, 4, 6, 8, 10});
    CHECK(r.bound_attempts == 5);
    CHECK(r.bounds_certified == 5);
    REQUIRE(r.best_bound);
    if (sense == Sense::Min) {
      CHECK(r.best_bound->value == 3.0);
      CHECK(r.best_bound_iter == 4);
    } else {
      CHECK(r.best_bound->value == 0.5);
      CHECK(r.best_bound_iter == 10);
    }
  }
}

TEST_CASE("uncertified callback results are ignored and termination triggers a final call") {
  SolverConfig cfg;
  cfg.eps = 1e-14;
  cfg.max_iter = 7;
  cfg.postprocess_every = 5;
  std::vector<int> iters;
  const GeneratedSdp g = generate({.n = 8, .m = 10, .p = 0.5, .density = 6, .seed = 4});
  const SolverResult r = solve(g.sdp, cfg, [&](const BoundRequest& req) -> std::optional<DualBound> {
    iters.push_back(req.iter);
    DualBound b;
    b.status = BoundStatus::LpInfeasible;
    return b;
  });
  CHECK(iters == std::vector<int>{5, 7});
  CHECK_FALSE(r.best_bound);
  CHECK(r.bounds_certified == 0);
}

TEST_CASE("limits, history and the iteration log") {
  const GeneratedSdp g = generate({.n = 10, .m = 15, .p = 0.5, .density = 8, .seed = 3});
  SolverConfig cfg;
  cfg.max_iter = 5;
  const auto log = std::filesystem::temp_directory_path() / "adal_test_iterlog.csv";
  cfg.log_path = log;
  const SolverResult r = solve(g.sdp, cfg);
  CHECK(r.status == SolverStatus::IterLimit);
  CHECK(r.iterations == 5);
  REQUIRE(r.history.size() == 5);
  CHECK(r.history.back().iter == 5);

  std::ifstream in(log);
  std::string line;
  std::getline(in, line);
  CHECK(line == "iter,r_P,r_D,sigma,obj,elapsed_sec");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);
  std::filesystem::remove(log);

  SolverConfig quick;
  quick.time_limit_sec = 1e-9;
  CHECK(solve(g.sdp, quick).status == SolverStatus::TimeLimit);
}

TEST_CASE("converged runs satisfy the stopping rule") {
  for (std::uint64_t seed = 10; seed < 14; ++seed) {
    const GeneratedSdp g = generate({.n = 10, .m = 15, .p = 0.5, .density = 8, .seed = seed});
    const SolverResult r = solve(g.sdp, SolverConfig{});
    if (r.status == SolverStatus::Converged) {
      CHECK(r.delta <= 1e-5);
      CHECK(std::abs(r.primal_obj - g.known_optimum) <= 1e-3 * (1.0 + std::abs(g.known_optimum)));
    }
  }
}

TEST_CASE("configuration validation") {
  SolverConfig c;
  c.eps = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.sigma0 = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.postprocess_every = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_THROWS_AS(AdalSolver(tiny_eq(), c), std::invalid_argument);
}

TEST_CASE("dependent equalities are reported at factorization") {
  const GeneralSdp sdp(2, eye(2), Sense::Min, {{eye(2), 1.0, RowSense::Eq}, {eye(2), 2.0, RowSense::Eq}});
  CHECK_THROWS_AS(solve(sdp, SolverConfig{}), FactorizationFailed);
}
