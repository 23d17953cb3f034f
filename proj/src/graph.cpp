#include "adal/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace adal {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges, std::string name)
    : n_(n), edges_(std::move(edges)), name_(std::move(name)) {
  if (n < 0) throw std::invalid_argument("graph order must be >= 0");
  for (auto& [i, j] : edges_) {
    if (i > j) std::swap(i, j);
    if (i == j) throw std::invalid_argument("self-loop at vertex " + std::to_string(i + 1));
    if (i < 0 || j >= n) throw std::invalid_argument("edge endpoint outside 1.." + std::to_string(n));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Graph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    const std::size_t start = k;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k > start) out.push_back(line.substr(start, k - start));
  }
  return out;
}

bool to_long(std::string_view s, long& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

DimacsParse parse_dimacs(std::string_view text, std::string name) {
  DimacsParse result;
  long n = -1;
  long declared_m = -1;
  std::vector<std::pair<int, int>> edges;
  std::size_t self_loops = 0;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (n >= 0) throw DimacsMalformedLine("second problem line", line_no);
      if (tok.size() != 4 || !to_long(tok[2], n) || !to_long(tok[3], declared_m) || n < 0 || declared_m < 0)
        throw DimacsMalformedLine("expected `p <format> <vertices> <edges>`", line_no);
      edges.reserve(static_cast<std::size_t>(declared_m));
    } else if (tok[0] == "e") {
      if (n < 0) throw DimacsMissingHeader("edge line before the problem line", line_no);
      long i = 0;
      long j = 0;
      if (tok.size() < 3 || !to_long(tok[1], i) || !to_long(tok[2], j))
        throw DimacsMalformedLine("expected `e <u> <v>`", line_no);
      if (i < 1 || j < 1 || i > n || j > n)
        throw DimacsVertexOutOfRange("vertex outside 1.." + std::to_string(n), line_no);
      if (i == j) {
        ++self_loops;
        continue;
      }
      edges.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1));
    } else if (tok[0] == "n" || tok[0] == "x" || tok[0] == "d" || tok[0] == "v") {
      // vertex weights and other annotations are ignored
      if (n < 0) throw DimacsMissingHeader("descriptor line before the problem line", line_no);
    } else {
      throw DimacsMalformedLine("unknown line type `" + std::string(tok[0]) + "`", line_no);
    }
  }
  if (n < 0) throw DimacsMissingHeader("no `p` line found");

  const std::size_t listed = edges.size();
  result.graph = Graph(static_cast<int>(n), std::move(edges), std::move(name));
  const std::size_t unique = result.graph.num_edges();
  if (self_loops > 0) result.warnings.push_back("ignored " + std::to_string(self_loops) + " self-loop(s)");
  if (unique < listed)
    result.warnings.push_back("dropped " + std::to_string(listed - unique) + " duplicate edge line(s)");
  if (static_cast<long>(listed + self_loops) != declared_m && static_cast<long>(unique) != declared_m)
    result.warnings.push_back("header declares " + std::to_string(declared_m) + " edges, found " +
                              std::to_string(unique));
  return result;
}

DimacsParse read_dimacs(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dimacs(ss.str(), path.stem().string());
}

std::string to_dimacs(const Graph& g) {
  std::ostringstream out;
  if (!g.name().empty()) out << "c " << g.name() << '\n';
  out << "p edge " << g.n() << ' ' << g.num_edges() << '\n';
  for (const auto& [i, j] : g.edges()) out << "e " << i + 1 << ' ' << j + 1 << '\n';
  return out.str();
}

Graph complement(const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  const std::size_t total = static_cast<std::size_t>(g.n()) * (g.n() > 0 ? g.n() - 1 : 0) / 2;
  edges.reserve(total - g.num_edges());
  auto it = g.edges().begin();
  for (int i = 0; i < g.n(); ++i) {
    for (int j = i + 1; j < g.n(); ++j) {
      if (it != g.edges().end() && it->first == i && it->second == j) {
        ++it;
        continue;
      }
      edges.emplace_back(i, j);
    }
  }
  return Graph(g.n(), std::move(edges), g.name());
}

}  // namespace adal
