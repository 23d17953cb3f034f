#include "adal/errors.hpp"
#include "adal/lp.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace adal;

namespace {

LpModel make_lp(const Vector& cost, const Vector& lo, const Vector& hi, const Matrix& a, const Vector& rlo,
                const Vector& rhi) {
  LpModel lp;
  lp.cost = cost;
  lp.col_lower = lo;
  lp.col_upper = hi;
  lp.a = SparseRowMatrix(a.sparseView());
  lp.row_lower = rlo;
  lp.row_upper = rhi;
  return lp;
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("single forced multiplier") {
  Matrix a(1, 1);
  a << 1.0;
  const LpResult r = solve_lp(make_lp(vec({-3.0}), vec({0.0}), vec({kInf}), a, vec({1.0}), vec({1.0})));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.objective == doctest::Approx(-3.0));
}

TEST_CASE("free column with no rows is unbounded") {
  const LpResult r = solve_lp(make_lp(vec({1.0}), vec({-kInf}), vec({kInf}), Matrix(0, 1), Vector(0), Vector(0)));
  CHECK(r.status == LpStatus::Unbounded);
}

TEST_CASE("negative value for a nonnegative column is infeasible") {
  Matrix a(1, 1);
  a << 1.0;
  const LpResult r = solve_lp(make_lp(vec({-3.0}), vec({0.0}), vec({kInf}), a, vec({-1.0}), vec({-1.0})));
  CHECK(r.status == LpStatus::Infeasible);
}

TEST_CASE("agrees with vertex enumeration on small bounded LPs") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> small(-3, 3);
  int feasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 3);
    const int rows = static_cast<int>(rng() % 5);
    Matrix a(rows, k);
    Vector rlo(rows), rhi(rows), lo(k), hi(k), c(k);
    for (int j = 0; j < k; ++j) {
      lo[j] = small(rng);
      hi[j] = lo[j] + 1 + static_cast<int>(rng() % 4);
      c[j] = nd(rng);
    }
    for (int r = 0; r < rows; ++r) {
      for (int j = 0; j < k; ++j) a(r, j) = (rng() % 4 == 0) ? 0.0 : nd(rng);
      const int kind = static_cast<int>(rng() % 4);
      const double v = nd(rng);
      rlo[r] = kind == 1 ? -kInf : v;
      rhi[r] = kind == 0 ? v : (kind == 2 ? kInf : v + std::abs(nd(rng)));
    }
    const LpModel lp = make_lp(c, lo, hi, a, rlo, rhi);
    const auto expect = oracle::lp_by_vertices(lp);
    const LpResult got = solve_lp(lp);
    CAPTURE(trial);
    if (expect) {
      ++feasible;
      REQUIRE(got.status == LpStatus::Optimal);
      CHECK(std::abs(got.objective - *expect) <= 1e-9 * (1.0 + std::abs(*expect)));
      CHECK(max_violation(lp, got.x) <= 1e-8);
    } else {
      CHECK(got.status == LpStatus::Infeasible);
    }
  }
  CHECK(feasible > 100);
}

TEST_CASE("elastic rows absorb violations within the allowance") {
  // x = 1 and x = 1 + 1e-7 cannot both hold exactly
  Matrix a(2, 1);
  a << 1.0, 1.0;
  const LpModel lp = make_lp(vec({1.0}), vec({0.0}), vec({kInf}), a, vec({1.0, 1.0 + 1e-7}), vec({1.0, 1.0 + 1e-7}));
  CHECK(solve_lp(lp).status == LpStatus::Infeasible);
  LpOptions opt;
  opt.elastic_tol = 1e-6;
  const LpResult r = solve_lp(lp, opt);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(max_violation(lp, r.x) <= 1e-6);
  opt.elastic_tol = 1e-8;
  CHECK(solve_lp(lp, opt).status == LpStatus::Infeasible);
}

TEST_CASE("MPS and solution files round trip") {
  Matrix a(3, 3);
  a << 1.0, -2.0, 0.0, 0.5, 0.0, 3.0, 0.0, 1.0, 1.0;
  LpModel lp = make_lp(vec({1.0, -1.5, 0.25}), vec({0.0, -kInf, -2.0}), vec({kInf, kInf, 4.0}), a,
                       vec({1.0, -kInf, -1.0}), vec({1.0, 2.0, 3.0}));
  std::stringstream mps;
  write_mps(lp, mps);
  const LpModel back = read_mps(mps);
  CHECK(back.num_cols() == 3);
  CHECK(back.num_rows() == 3);
  CHECK((Matrix(back.a) - a).norm() == 0.0);
  CHECK(back.cost == lp.cost);
  CHECK(back.col_lower == lp.col_lower);
  CHECK(back.col_upper == lp.col_upper);
  CHECK(back.row_lower == lp.row_lower);
  CHECK(back.row_upper == lp.row_upper);

  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  std::stringstream sol;
  write_solution(back, r, sol);
  const LpResult rr = read_solution(back, sol);
  CHECK(rr.status == LpStatus::Optimal);
  CHECK(rr.x == r.x);

  std::istringstream bad("NAME x\nROWS\n Q r1\n");
  CHECK_THROWS_AS(read_mps(bad), ParseError);
}

TEST_CASE("minimization MPS input is negated into max form") {
  std::istringstream in(
      "NAME t\nROWS\n N obj\n G c1\nCOLUMNS\n x obj 1 c1 1\nRHS\n rhs c1 2\nBOUNDS\n LO bnd x 0\nENDATA\n");
  const LpModel lp = read_mps(in);
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(-2.0));
}

TEST_CASE("external solver adapter") {
  Matrix a(2, 2);
  a << 1.0, 1.0, 1.0, -1.0;
  const LpModel lp = make_lp(vec({1.0, 2.0}), vec({0.0, 0.0}), vec({kInf, kInf}), a, vec({-kInf, -1.0}), vec({4.0, 1.0}));
  const LpResult in = solve_lp(lp);
  const LpResult ex = solve_lp_external(lp, std::string(ADAL_TOOL) + " lp-solve");
  REQUIRE(ex.status == LpStatus::Optimal);
  CHECK(ex.objective == doctest::Approx(in.objective).epsilon(1e-12));
  CHECK((ex.x - in.x).norm() <= 1e-12);

  const LpResult fail = solve_lp_external(lp, "false");
  CHECK(fail.status == LpStatus::Infeasible);
  CHECK_FALSE(fail.warning.empty());
}
