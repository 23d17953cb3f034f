#pragma once

#include "adal/general_sdp.hpp"
#include "adal/graph.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adal {

/// max <J, X>  s.t.  trace(X) = 1,  X_ij = 0 for ij in E,  X psd.
GeneralSdp build_theta(const Graph& g);

/// build_theta with X >= 0 entrywise (full upper-triangle mask).
GeneralSdp build_theta_plus(const Graph& g);

/// Coloring bound for the graph `g` (adjacent vertices need distinct colors):
///   min t  s.t.  X_ii = t - 1,  X_ij = -1 for ij in E(g),  X_ij >= -1 otherwise.
/// t is eliminated as X_11 + 1: the instance minimizes X_11 with offset 1 and
/// carries X_ii - X_11 = 0 for i >= 2. Non-edge bounds are slack inequalities
/// -X_ij <= 1. Requires n >= 2.
GeneralSdp build_theta_bar_plus(const Graph& g);

class CountExceedsPopulation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Vertex triple (i; j, k) with j < k and i not in {j, k}, 0-based.
struct Triple {
  int i = 0;
  int j = 0;
  int k = 0;
  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// n (n-1) (n-2) / 2.
std::uint64_t triangle_population(int n);

/// `count` distinct triples drawn uniformly without replacement, returned in
/// lexicographic order. Deterministic across platforms for a given seed.
std::vector<Triple> sample_triples(int n, std::uint64_t count, std::uint64_t seed);

/// X_ij + X_ik - X_jk - X_11 <= 0 (the triangle inequality with t eliminated).
Constraint triangle_cut(int n, const Triple& t);

/// Sampled triangle cuts for a graph on g.n() vertices. Throws
/// CountExceedsPopulation when count exceeds triangle_population(n).
std::vector<Constraint> sample_triangle_cuts(const Graph& g, std::uint64_t count, std::uint64_t seed);

enum class Relaxation { Theta, ThetaPlus, ThetaBarPlus };

/// Accepts "theta", "theta+", "thetabar+". Throws std::invalid_argument otherwise.
Relaxation parse_relaxation(const std::string& name);
const char* to_string(Relaxation r);

GeneralSdp build_relaxation(const Graph& g, Relaxation r);

}  // namespace adal
