#pragma once

#include "adal/errors.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adal {

/// Simple undirected graph on vertices 0..n-1. Edges are stored once as
/// (i, j) with i < j, sorted and unique.
class Graph {
 public:
  Graph() = default;
  /// Normalizes edge orientation, sorts and drops duplicates. Throws
  /// std::invalid_argument on self-loops or out-of-range endpoints.
  Graph(int n, std::vector<std::pair<int, int>> edges, std::string name = {});

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::string& name() const { return name_; }
  bool has_edge(int i, int j) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::string name_;
};

class DimacsMissingHeader : public ParseError {
 public:
  using ParseError::ParseError;
};
class DimacsVertexOutOfRange : public ParseError {
 public:
  using ParseError::ParseError;
};
class DimacsMalformedLine : public ParseError {
 public:
  using ParseError::ParseError;
};

struct DimacsParse {
  Graph graph;
  std::vector<std::string> warnings;
};

/// DIMACS ascii: `c` comment lines, one `p <format> <n> <m>` line, `e <i> <j>`
/// edge lines with 1-based endpoints. Duplicate edges, self-loops and an edge
/// count that disagrees with the header produce warnings.
DimacsParse parse_dimacs(std::string_view text, std::string name = {});
DimacsParse read_dimacs(const std::filesystem::path& path);

std::string to_dimacs(const Graph& g);

Graph complement(const Graph& g);

}  // namespace adal
