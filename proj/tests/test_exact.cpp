#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "moran/bounds.hpp"
#include "moran/errors.hpp"
#include "moran/exact.hpp"
#include "moran/graph.hpp"
#include "moran/simulate.hpp"
#include "support/corpus.hpp"

using moran::Graph;

TEST_CASE("two- and three-clique closed forms") {
  const Graph k2 = moran::make_complete(2);
  const moran::FixationTable t2 = moran::exact_fixation_all(k2, 2.0);
  CHECK(t2.vertex(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(t2.vertex(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(t2.values.front() == 0.0);
  CHECK(t2.values.back() == 1.0);

  const Graph k3 = moran::make_complete(3);
  const moran::FixationTable t3 = moran::exact_fixation_all(k3, 2.0);
  for (int v = 0; v < 3; ++v) {
    CHECK(t3.vertex(v) == doctest::Approx(4.0 / 7.0).epsilon(1e-11));
  }
  CHECK(moran::fixation_of_graph(k3, 2.0) ==
        doctest::Approx(4.0 / 7.0).epsilon(1e-11));
}

TEST_CASE("regular graphs match the isothermal closed form") {
  for (double r : {1.5, 2.0, 5.0}) {
    const double c5 = moran::fixation_of_graph(moran::make_cycle(5), r);
    const double k5 = moran::fixation_of_graph(moran::make_complete(5), r);
    const double expect = moran::isothermal_value(5, r);
    CHECK(c5 == doctest::Approx(expect).epsilon(1e-10));
    CHECK(k5 == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("path graph agrees with Monte Carlo") {
  const Graph path = moran::make_path(3);
  const moran::FixationTable table = moran::exact_fixation_all(path, 2.0);
  moran::SimParams params;
  params.r = 2.0;
  params.runs = 1000000;
  params.seed = 20260817;
  params.threads = 2;
  for (int v = 0; v < 3; ++v) {
    const moran::Estimate est = moran::estimate_fixation(path, {v}, params);
    CHECK(std::fabs(est.p_hat - table.vertex(v)) <= 4.0 * est.std_err);
  }
}

TEST_CASE("fixation table structure on the small corpus") {
  for (const Graph& g : corpus::connected_graphs_up_to(2, 5)) {
    const moran::FixationTable table = moran::exact_fixation_all(g, 2.0);
    CHECK(table.residual <= 1e-10);
    CHECK(table.values.front() == 0.0);
    CHECK(table.values.back() == 1.0);
    const std::uint32_t full = (std::uint32_t{1} << g.n) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      // interior values strictly inside (0,1)
      CHECK(table.values[mask] > 0.0);
      CHECK(table.values[mask] < 1.0);
      // monotone under adding one vertex
      for (int v = 0; v < g.n; ++v) {
        if (mask >> v & 1u) continue;
        const std::uint32_t bigger = mask | (std::uint32_t{1} << v);
        CHECK(table.values[mask] <= table.values[bigger] + 1e-11);
      }
    }
  }
}

TEST_CASE("singleton values nondecreasing in fitness on the corpus") {
  const std::vector<double> grid = {1.0, 1.5, 2.0, 5.0, 10.0};
  for (const Graph& g : corpus::connected_graphs_up_to(2, 5)) {
    std::vector<double> prev;
    for (double r : grid) {
      std::vector<double> cur;
      const moran::FixationTable table = moran::exact_fixation_all(g, r);
      for (int v = 0; v < g.n; ++v) cur.push_back(table.vertex(v));
      if (!prev.empty()) {
        for (std::size_t i = 0; i < cur.size(); ++i) {
          CHECK(cur[i] >= prev[i] - 1e-11);
        }
      }
      prev = cur;
    }
  }
}

TEST_CASE("clique-with-noses singletons: the pendant start is stronger") {
  const Graph g = moran::make_urchin(2);
  CHECK(moran::fixation_of_vertex(g, 6.0, 2) >
        moran::fixation_of_vertex(g, 6.0, 0));
  const double mean = moran::fixation_of_graph(g, 6.0);
  CHECK(mean > 0.0);
  CHECK(mean < 1.0);
}

TEST_CASE("star leaves are exchangeable") {
  const Graph star = moran::make_star(4);
  const moran::FixationTable table = moran::exact_fixation_all(star, 2.0);
  CHECK(table.vertex(1) == doctest::Approx(table.vertex(2)).epsilon(1e-12));
  CHECK(table.vertex(2) == doctest::Approx(table.vertex(3)).epsilon(1e-12));
}

TEST_CASE("size cap and connectivity are enforced") {
  CHECK_THROWS_AS(moran::exact_fixation_all(moran::make_path(23), 2.0),
                  moran::SizeCapError);
  CHECK_THROWS_AS(
      moran::exact_fixation_all(moran::build_graph(4, {{0, 1}, {2, 3}}), 2.0),
      moran::GraphInvalidError);
  CHECK_THROWS_AS(moran::exact_fixation_all(moran::make_path(3), 0.0),
                  moran::DomainError);
}

TEST_CASE("weighted single-pair system with uniform weights is isothermal") {
  const std::vector<Graph> graphs = {moran::make_path(4), moran::make_star(4),
                                     moran::make_complete(3)};
  for (const Graph& g : graphs) {
    const std::vector<double> d(static_cast<std::size_t>(g.n), 1.0);
    const moran::L0Result min_pair = moran::solve_L0_min_pair(g, 2.0, d);
    const double expect = moran::isothermal_value(g.n, 2.0);
    for (int v = 0; v < g.n; ++v) {
      CHECK(min_pair.values[std::uint32_t{1} << v] ==
            doctest::Approx(expect).epsilon(1e-9));
    }

    // verbatim single-pair solve with an arbitrary fixed selector
    const moran::PairSelector first_pair = [&](std::uint32_t mask) {
      for (auto [u, v] : g.edges) {
        const bool mu = (mask >> u) & 1u;
        const bool mv = (mask >> v) & 1u;
        if (mu && !mv) return std::make_pair(u, v);
        if (mv && !mu) return std::make_pair(v, u);
      }
      return std::make_pair(-1, -1);
    };
    const moran::L0Result fixed = moran::solve_L0_given_pairs(g, 2.0, d, first_pair);
    for (int v = 0; v < g.n; ++v) {
      CHECK(fixed.values[std::uint32_t{1} << v] ==
            doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("degree-weighted minimum-pair values lower-bound the true ones") {
  const std::vector<Graph> graphs = {moran::make_path(5), moran::make_star(5),
                                     moran::make_urchin(2),
                                     moran::make_cycle(6)};
  for (const Graph& g : graphs) {
    std::vector<double> d(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) {
      d[static_cast<std::size_t>(v)] = 1.0 / g.degree(v);
    }
    const moran::L0Result lower = moran::solve_L0_min_pair(g, 2.0, d);
    const moran::FixationTable exact = moran::exact_fixation_all(g, 2.0);
    for (std::size_t mask = 0; mask < exact.values.size(); ++mask) {
      CHECK(lower.values[mask] >= -1e-12);
      CHECK(lower.values[mask] <= exact.values[mask] + 1e-10);
    }
  }
}

TEST_CASE("two-vertex single-pair system reduces to the two-state chain") {
  const Graph k2 = moran::make_complete(2);
  const std::vector<double> d = {1.0, 1.0};
  const moran::L0Result res = moran::solve_L0_min_pair(k2, 2.0, d);
  CHECK(res.values[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}
