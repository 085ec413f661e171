#include <algorithm>
#include <set>
#include <vector>

#include <doctest.h>

#include "moran/errors.hpp"
#include "moran/graph.hpp"
#include "support/corpus.hpp"

using moran::Graph;

namespace {

std::vector<int> degree_census(const Graph& g) {
  std::vector<int> degs;
  degs.reserve(static_cast<std::size_t>(g.n));
  for (int v = 0; v < g.n; ++v) degs.push_back(g.degree(v));
  std::sort(degs.begin(), degs.end());
  return degs;
}

}  // namespace

TEST_CASE("build_graph basics") {
  const Graph g = moran::build_graph(2, {{0, 1}});
  CHECK(g.n == 2);
  CHECK(g.m() == 1);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 1);

  const Graph k3 = moran::build_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(k3.m() == 3);
  for (int v = 0; v < 3; ++v) CHECK(k3.degree(v) == 2);

  // adjacency symmetric and consistent with has_edge
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) {
      CHECK(k3.has_edge(u, v) == (u != v));
    }
  }
}

TEST_CASE("build_graph rejects bad input and merges duplicates") {
  CHECK_THROWS_AS(moran::build_graph(3, {{0, 0}}), moran::ConstraintError);
  CHECK_THROWS_AS(moran::build_graph(3, {{0, 3}}), moran::ConstraintError);
  CHECK_THROWS_AS(moran::build_graph(3, {{-1, 1}}), moran::ConstraintError);
  CHECK_THROWS_AS(moran::build_graph(0, {}), moran::ConstraintError);

  const Graph g = moran::build_graph(2, {{0, 1}, {1, 0}, {0, 1}});
  CHECK(g.m() == 1);
}

TEST_CASE("is_connected") {
  CHECK(moran::is_connected(moran::build_graph(3, {{0, 1}, {1, 2}, {0, 2}})));
  CHECK_FALSE(moran::is_connected(moran::build_graph(4, {{0, 1}, {2, 3}})));
  CHECK(moran::is_connected(moran::build_graph(1, {})));
}

TEST_CASE("benchmark families") {
  const Graph k4 = moran::make_complete(4);
  CHECK(k4.m() == 6);
  for (int v = 0; v < 4; ++v) CHECK(k4.degree(v) == 3);

  const Graph star = moran::make_star(4);
  CHECK(star.degree(0) == 3);
  for (int v = 1; v < 4; ++v) CHECK(star.degree(v) == 1);

  CHECK_THROWS_AS(moran::make_cycle(2), moran::ConstraintError);
  const Graph c5 = moran::make_cycle(5);
  CHECK(c5.m() == 5);
  for (int v = 0; v < 5; ++v) CHECK(c5.degree(v) == 2);

  const Graph p4 = moran::make_path(4);
  CHECK(p4.m() == 3);
  CHECK(p4.degree(0) == 1);
  CHECK(p4.degree(1) == 2);
  CHECK(moran::is_connected(p4));

  const Graph p1 = moran::make_path(1);
  CHECK(p1.n == 1);
  CHECK(p1.m() == 0);
}

TEST_CASE("urchin construction") {
  const Graph tiny = moran::make_urchin(1);
  CHECK(tiny.n == 2);
  CHECK(tiny.m() == 1);

  const Graph g3 = moran::make_urchin(3);
  CHECK(g3.n == 6);
  CHECK(g3.m() == 6);  // triangle + perfect matching
  CHECK(degree_census(g3) == std::vector<int>{1, 1, 1, 3, 3, 3});
  for (int j = 0; j < 3; ++j) CHECK(g3.has_edge(j, 3 + j));
  CHECK(g3.has_edge(0, 1));
  CHECK(g3.has_edge(1, 2));
  CHECK(g3.has_edge(0, 2));
  CHECK_FALSE(g3.has_edge(3, 4));

  const Graph g100 = moran::make_urchin(100);
  CHECK(g100.n == 200);
  const std::vector<int> census = degree_census(g100);
  CHECK(std::count(census.begin(), census.end(), 1) == 100);
  CHECK(std::count(census.begin(), census.end(), 100) == 100);
  CHECK(moran::is_connected(g100));
}

TEST_CASE("phi-urchin construction and constraints") {
  const Graph g = moran::make_phi_urchin(12, 2);
  CHECK(g.n == 12);
  CHECK(g.m() == 22);  // C(4,2)=6 clique edges + 16 spoke edges
  const int clique = 4;
  for (int v = 0; v < clique; ++v) CHECK(g.degree(v) == 3 + 4);  // 3 clique + phi^2
  for (int v = clique; v < 12; ++v) CHECK(g.degree(v) == 2);
  // handshake between the two sides: phi*|V2| == phi^2*|V1|
  CHECK(2 * 8 == 4 * 4);
  // deterministic circulant wiring: nose j -> clique (j+t) mod 4
  for (int j = 0; j < 8; ++j) {
    for (int t = 0; t < 2; ++t) {
      CHECK(g.has_edge((j + t) % clique, clique + j));
    }
  }
  CHECK(moran::is_connected(g));

  // n=12, phi=3 is valid: clique size 3 = phi, noses have 3 distinct spokes
  const Graph g3 = moran::make_phi_urchin(12, 3);
  CHECK(g3.n == 12);
  for (int v = 3; v < 12; ++v) CHECK(g3.degree(v) == 3);
  for (int v = 0; v < 3; ++v) CHECK(g3.degree(v) == 2 + 9);

  CHECK_THROWS_AS(moran::make_phi_urchin(10, 2), moran::ConstraintError);
  CHECK_THROWS_AS(moran::make_phi_urchin(12, 1), moran::ConstraintError);
  CHECK_THROWS_AS(moran::make_phi_urchin(12, 4), moran::ConstraintError);
  // phi^2 > n
  CHECK_THROWS_AS(moran::make_phi_urchin(24, 5), moran::ConstraintError);
}

TEST_CASE("edge list round-trip and parsing") {
  const Graph star = moran::make_star(5);
  const std::string text = moran::serialize_edge_list(star);
  const Graph parsed = moran::parse_edge_list(text);
  CHECK(parsed.n == star.n);
  CHECK(parsed.edges == star.edges);
  CHECK(moran::serialize_edge_list(parsed) == text);

  // comments and blank lines are ignored
  const Graph g = moran::parse_edge_list(
      "# a triangle\n3 3\n\n0 1\n# middle comment\n1 2\n0 2\n");
  CHECK(g.n == 3);
  CHECK(g.m() == 3);

  CHECK_THROWS_AS(moran::parse_edge_list(""), moran::ConstraintError);
  CHECK_THROWS_AS(moran::parse_edge_list("2 1\n0 0\n"), moran::ConstraintError);
  CHECK_THROWS_AS(moran::parse_edge_list("2 2\n0 1\n"), moran::ConstraintError);
  CHECK_THROWS_AS(moran::parse_edge_list("2 1\n0 5\n"), moran::ConstraintError);
  CHECK_THROWS_AS(moran::parse_edge_list("2 1\n0 1 9\n"), moran::ConstraintError);
}

TEST_CASE("corpus enumeration matches known isomorphism-class counts") {
  CHECK(corpus::connected_graphs(2).size() == 1);
  CHECK(corpus::connected_graphs(3).size() == 2);
  CHECK(corpus::connected_graphs(4).size() == 6);
  CHECK(corpus::connected_graphs(5).size() == 21);
  CHECK(corpus::connected_graphs(6).size() == 112);
  for (const Graph& g : corpus::connected_graphs_up_to(2, 5)) {
    CHECK(moran::is_connected(g));
  }
}
