#include "adal/relaxations.hpp"

#include "random.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace adal {

namespace {

SparseSymMat single(int n, int i, int j, double v) { return SparseSymMat(n, {{i, j, v}}); }

std::vector<Constraint> theta_constraints(const Graph& g) {
  const int n = g.n();
  std::vector<Constraint> cons;
  cons.reserve(1 + g.num_edges());
  std::vector<SymEntry> trace;
  trace.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) trace.push_back({i, i, 1.0});
  cons.push_back({SparseSymMat(n, std::move(trace)), 1.0, RowSense::Eq});
  for (const auto& [i, j] : g.edges()) cons.push_back({single(n, i, j, 1.0), 0.0, RowSense::Eq});
  return cons;
}

SparseSymMat all_ones(int n) {
  std::vector<SymEntry> e;
  e.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) e.push_back({i, j, 1.0});
  return SparseSymMat(n, std::move(e));
}

void require_vertices(const Graph& g, int min_n, const char* what) {
  if (g.n() < min_n)
    throw std::invalid_argument(std::string(what) + " needs at least " + std::to_string(min_n) + " vertices");
}

Triple decode(int n, std::uint64_t idx) {
  const std::uint64_t per = static_cast<std::uint64_t>(n - 1) * (n - 2) / 2;
  Triple t;
  t.i = static_cast<int>(idx / per);
  std::uint64_t r = idx % per;
  int a = 0;
  while (r >= static_cast<std::uint64_t>(n - 2 - a)) {
    r -= static_cast<std::uint64_t>(n - 2 - a);
    ++a;
  }
  const int b = a + 1 + static_cast<int>(r);
  t.j = a + (a >= t.i ? 1 : 0);
  t.k = b + (b >= t.i ? 1 : 0);
  return t;
}

}  // namespace

GeneralSdp build_theta(const Graph& g) {
  require_vertices(g, 1, "theta");
  return GeneralSdp(g.n(), all_ones(g.n()), Sense::Max, theta_constraints(g));
}

GeneralSdp build_theta_plus(const Graph& g) {
  require_vertices(g, 1, "theta+");
  const int n = g.n();
  std::vector<Position> mask;
  mask.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) mask.push_back({i, j});
  return GeneralSdp(n, all_ones(n), Sense::Max, theta_constraints(g), std::move(mask));
}

GeneralSdp build_theta_bar_plus(const Graph& g) {
  require_vertices(g, 2, "thetabar+");
  const int n = g.n();
  const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  std::vector<Constraint> cons;
  cons.reserve(pairs + static_cast<std::size_t>(n) - 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!g.has_edge(i, j)) cons.push_back({single(n, i, j, -0.5), 1.0, RowSense::Le});
  for (const auto& [i, j] : g.edges()) cons.push_back({single(n, i, j, 0.5), -1.0, RowSense::Eq});
  for (int i = 1; i < n; ++i) cons.push_back({SparseSymMat(n, {{0, 0, -1.0}, {i, i, 1.0}}), 0.0, RowSense::Eq});
  return GeneralSdp(n, single(n, 0, 0, 1.0), Sense::Min, std::move(cons), {}, 1.0);
}

std::uint64_t triangle_population(int n) {
  if (n < 3) return 0;
  return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) * static_cast<std::uint64_t>(n - 2) / 2;
}

std::vector<Triple> sample_triples(int n, std::uint64_t count, std::uint64_t seed) {
  const std::uint64_t pop = triangle_population(n);
  if (count > pop)
    throw CountExceedsPopulation("requested " + std::to_string(count) + " triangle cuts, only " +
                                 std::to_string(pop) + " exist");
  std::vector<std::uint64_t> picked;
  if (count > 0) {
    std::mt19937_64 rng(seed);
    picked = detail::sample_distinct(rng, pop, count);
  }
  std::vector<Triple> out;
  out.reserve(picked.size());
  for (auto idx : picked) out.push_back(decode(n, idx));
  std::sort(out.begin(), out.end());
  return out;
}

Constraint triangle_cut(int n, const Triple& t) {
  const auto [i, j, k] = t;
  return {SparseSymMat(n, {{std::min(i, j), std::max(i, j), 0.5},
                           {std::min(i, k), std::max(i, k), 0.5},
                           {j, k, -0.5},
                           {0, 0, -1.0}}),
          0.0, RowSense::Le};
}

std::vector<Constraint> sample_triangle_cuts(const Graph& g, std::uint64_t count, std::uint64_t seed) {
  if (count == 0) return {};
  require_vertices(g, 3, "triangle cuts");
  std::vector<Constraint> cuts;
  for (const auto& t : sample_triples(g.n(), count, seed)) cuts.push_back(triangle_cut(g.n(), t));
  return cuts;
}

Relaxation parse_relaxation(const std::string& name) {
  if (name == "theta") return Relaxation::Theta;
  if (name == "theta+") return Relaxation::ThetaPlus;
  if (name == "thetabar+") return Relaxation::ThetaBarPlus;
  throw std::invalid_argument("unknown relaxation `" + name + "` (expected theta, theta+ or thetabar+)");
}

const char* to_string(Relaxation r) {
  switch (r) {
    case Relaxation::Theta: return "theta";
    case Relaxation::ThetaPlus: return "theta+";
    case Relaxation::ThetaBarPlus: return "thetabar+";
  }
  return "?";
}

GeneralSdp build_relaxation(const Graph& g, Relaxation r) {
  switch (r) {
    case Relaxation::Theta: return build_theta(g);
    case Relaxation::ThetaPlus: return build_theta_plus(g);
    case Relaxation::ThetaBarPlus: return build_theta_bar_plus(g);
  }
  throw std::invalid_argument("bad relaxation");
}

}  // namespace adal
