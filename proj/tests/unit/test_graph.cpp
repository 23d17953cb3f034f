#include "adal/graph.hpp"

#include "doctest.h"

#include <filesystem>
#include <string>

using namespace adal;

TEST_CASE("parse a path") {
  const DimacsParse p = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3");
  CHECK(p.graph.n() == 3);
  CHECK(p.graph.num_edges() == 2);
  CHECK(p.graph.has_edge(0, 1));
  CHECK(p.graph.has_edge(2, 1));
  CHECK_FALSE(p.graph.has_edge(0, 2));
  CHECK(p.warnings.empty());
}

TEST_CASE("duplicates and count mismatches are warnings") {
  const DimacsParse p = parse_dimacs("c dup\np edge 3 2\ne 1 2\ne 2 1\n");
  CHECK(p.graph.num_edges() == 1);
  CHECK(p.warnings.size() == 1);

  const DimacsParse q = parse_dimacs("p col 4 9\ne 1 2\n\nc trailing\n");
  CHECK(q.graph.num_edges() == 1);
  CHECK(q.warnings.size() == 1);
}

TEST_CASE("parse errors carry a line number") {
  CHECK_THROWS_AS(parse_dimacs("p edge 3 1\ne 1 4\n"), DimacsVertexOutOfRange);
  CHECK_THROWS_AS(parse_dimacs("e 1 2\np edge 3 1\n"), DimacsMissingHeader);
  CHECK_THROWS_AS(parse_dimacs("c nothing\n"), DimacsMissingHeader);
  CHECK_THROWS_AS(parse_dimacs("p edge 3 1\ne 1\n"), DimacsMalformedLine);
  CHECK_THROWS_AS(parse_dimacs("p edge 3 1\nq 1 2\n"), DimacsMalformedLine);
  try {
    parse_dimacs("c a\np edge 3 1\ne 1 x\n");
    FAIL("no exception");
  } catch (const DimacsMalformedLine& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("complement") {
  const Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(complement(k3).num_edges() == 0);
  CHECK(complement(Graph(4, {})).num_edges() == 6);
  const Graph g(6, {{0, 1}, {2, 4}, {3, 5}, {1, 5}});
  CHECK(complement(complement(g)) == g);
  CHECK(complement(g).num_edges() + g.num_edges() == 15);
}

TEST_CASE("constructor normalizes and validates") {
  const Graph g(3, {{2, 0}, {0, 2}, {1, 0}});
  CHECK(g.num_edges() == 2);
  CHECK(g.edges().front() == std::pair<int, int>{0, 1});
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("DIMACS text round trip") {
  const Graph g(5, {{0, 4}, {1, 2}, {2, 3}}, "g");
  CHECK(parse_dimacs(to_dimacs(g)).graph == g);
}

TEST_CASE("bundled graphs") {
  const std::filesystem::path dir = ADAL_TEST_DATA_DIR;
  const struct {
    const char* file;
    int n;
    std::size_t m;
  } expect[] = {{"hamming6-2.clq", 64, 1824}, {"hamming6-4.clq", 64, 704}, {"MANN_a9.clq", 45, 918},
                {"keller4.clq", 171, 9435},   {"myciel3.col", 11, 20},    {"myciel4.col", 23, 71},
                {"myciel5.col", 47, 236},     {"queen5_5.col", 25, 160},  {"queen6_6.col", 36, 290}};
  for (const auto& e : expect) {
    CAPTURE(e.file);
    const DimacsParse p = read_dimacs(dir / e.file);
    CHECK(p.graph.n() == e.n);
    CHECK(p.graph.num_edges() == e.m);
    CHECK(p.warnings.empty());
  }
  CHECK_THROWS(read_dimacs(dir / "no-such-graph.col"));
}
