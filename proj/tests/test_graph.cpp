#include <doctest.h>

#include <map>

#include "qmix/exact.hpp"
#include "qmix/graph.hpp"
#include "support.hpp"

using namespace qmix;
using namespace qmix::testing;

TEST_CASE("integer nullspace of a path") {
  IntMatrix m(3, 3);
  m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = 1;
  const auto ker = integer_nullspace(m);
  REQUIRE(ker.size() == 1);
  CHECK(ker[0] == IntVector{-1, 0, 1});
  CHECK(multiply(m, ker[0]) == IntVector{0, 0, 0});
}

TEST_CASE("integer nullspace respects column order") {
  IntMatrix m(1, 3);
  m(0, 0) = 1;
  m(0, 1) = 1;
  m(0, 2) = 1;
  const std::vector<int> order{2, 1, 0};
  const auto ker = integer_nullspace(m, order);
  REQUIRE(ker.size() == 2);
  for (const auto& v : ker) CHECK(multiply(m, v) == IntVector{0});
}

TEST_CASE("perfect squares and square-free parts") {
  BigInt r;
  CHECK(is_perfect_square(BigInt(49), &r));
  CHECK(r == 7);
  CHECK_FALSE(is_perfect_square(BigInt(50)));
  CHECK(is_perfect_square(BigInt(0)));
  std::int64_t s = 0;
  CHECK(squarefree_part(72, &s) == 2);
  CHECK(s == 6);
  CHECK(squarefree_part(1) == 1);
  CHECK(primitive({BigInt(-4), BigInt(6), BigInt(0)}) == IntVector{2, -3, 0});
}

TEST_CASE("graph6 fixtures written by networkx decode") {
  const std::string dir = QMIX_TEST_DATA;
  const Graph k13 = parse_graph6(read_lines(dir + "/k13.g6").at(0));
  CHECK(k13.order() == 4);
  CHECK(k13.size() == 3);
  CHECK(k13.degree(0) == 3);
  const Graph p7 = parse_graph6(read_lines(dir + "/p7.g6").at(0));
  CHECK(is_path_graph(p7));
  CHECK(to_graph6(p7) == read_lines(dir + "/p7.g6").at(0));
}

TEST_CASE("graph6 round trip and header") {
  std::mt19937 rng(3);
  for (int n : {1, 2, 5, 17, 62, 63, 64, 100}) {
    const Graph g = random_tree(n, rng);
    const Graph h = parse_graph6(to_graph6(g));
    CHECK(h.order() == n);
    CHECK(h.size() == g.size());
    for (const auto& e : g.edges()) CHECK(h.adjacent(e.u, e.v));
  }
  CHECK(parse_graph6(">>graph6<<Bw").size() == 3);
  CHECK_THROWS_AS(parse_graph6("C~~~~"), ParseError);
  CHECK_THROWS_AS(parse_graph6(""), ParseError);
}

TEST_CASE("edge list parsing reports line numbers") {
  const Graph g = parse_weighted_edgelist("# comment\n0 1 2.5\n1 2 1\n");
  CHECK(g.order() == 3);
  CHECK(g.weight(0, 1) == 2.5);
  CHECK(g.weight_class() == WeightClass::Real);
  try {
    parse_weighted_edgelist("0 1 1\n\n1 x 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_weighted_edgelist("0 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_weighted_edgelist("0 1 1\n1 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_weighted_edgelist("0 1 -1\n"), ParseError);
}

TEST_CASE("weight classes") {
  CHECK(path(3).weight_class() == WeightClass::Unit);
  CHECK(Graph(2, {{0, 1, 3.0}}).weight_class() == WeightClass::Integer);
  CHECK(Graph(2, {{0, 1, 0.5}}).weight_class() == WeightClass::Real);
}

TEST_CASE("distance-two pairs against a brute-force count") {
  // K_{1,5} with one leg subdivided.
  const Graph spider = from_pairs(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {5, 6}});
  const auto s = degree_stats(spider);
  std::int64_t q = 0;
  for (int i = 0; i < 7; ++i) {
    for (int j = i + 1; j < 7; ++j) {
      if (!spider.adjacent(i, j) && common_neighbors(spider, i, j) > 0) ++q;
    }
  }
  CHECK(s.dist2_pairs == q);
  CHECK(q == 11);
  CHECK(s.common_neighbor_total == 11);
  CHECK(s.avg_degree == Rational(12, 7));
}

TEST_CASE("structure predicates") {
  CHECK(is_tree(star(4)));
  CHECK_FALSE(is_tree(cycle(4)));
  CHECK(is_connected(cycle(5)));
  CHECK_FALSE(is_connected(disjoint_union(complete(2), complete(2))));
  CHECK(bipartition(cycle(6)).present);
  CHECK_FALSE(bipartition(cycle(5)).present);
  const auto bq = bipartition(hypercube(3));
  CHECK(bq.b1.size() == 4);
  auto f = cycle_flags(cycle(5));
  CHECK(f.has_c5);
  CHECK_FALSE(f.has_c4);
  CHECK_FALSE(f.has_triangle);
  f = cycle_flags(complete(4));
  CHECK(f.has_triangle);
  CHECK(f.has_c4);
  CHECK(cyclomatic_index(cycle(7)) == 1);
  CHECK(is_weighted_regular(hypercube(3)));
  CHECK_FALSE(is_weighted_regular(path(3)));
  CHECK(is_caterpillar(path(6)));
  CHECK_FALSE(is_caterpillar(from_pairs(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}})));
  CHECK(is_cycle_graph(cycle(4)));
}

TEST_CASE("subdivision and pendant attachment") {
  const Graph t = path(4);
  const Graph s = subdivide(t);
  CHECK(s.order() == 7);
  CHECK(s.size() == 6);
  CHECK(bipartition(s).present);
  const Graph x = attach_pendants(t);
  CHECK(x.order() == 8);
  CHECK(is_tree(x));
  for (int i = 0; i < 4; ++i) CHECK(x.adjacent(i, 4 + i));
}

TEST_CASE("connected graph corpus counts") {
  const std::string dir = QMIX_TEST_DATA;
  std::map<int, int> counts;
  for (const auto& f : {"/connected_n2_6.g6", "/connected_n7.g6"}) {
    for (const auto& line : read_lines(dir + f)) {
      const Graph g = parse_graph6(line);
      REQUIRE(is_connected(g));
      ++counts[g.order()];
    }
  }
  CHECK(counts[2] == 1);
  CHECK(counts[3] == 2);
  CHECK(counts[4] == 6);
  CHECK(counts[5] == 21);
  CHECK(counts[6] == 112);
  CHECK(counts[7] == 853);
}
