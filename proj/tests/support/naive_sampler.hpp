#pragma once

// Reference "textbook" Moran sampler used only as a test oracle: each step
// picks a reproducing vertex with probability proportional to fitness among
// ALL vertices (r for mutants, 1 otherwise), then copies its state onto a
// uniformly random neighbor.  Steps that copy onto an equal-state neighbor
// change nothing and are simply repeated.  This is an independent
// implementation path from the production self-loop-eliminated sampler.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "moran/graph.hpp"

namespace testsupport {

struct NaiveEstimate {
  long runs = 0;
  long fixations = 0;
  double p_hat = 0.0;
  double std_err = 0.0;
};

inline NaiveEstimate naive_estimate(const moran::Graph& g, double r,
                                    int start_vertex, long runs,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = g.n;

  long fixations = 0;
  std::vector<std::uint8_t> mutant(static_cast<std::size_t>(n));
  for (long run = 0; run < runs; ++run) {
    std::fill(mutant.begin(), mutant.end(), std::uint8_t{0});
    mutant[static_cast<std::size_t>(start_vertex)] = 1;
    int count = 1;
    while (count != 0 && count != n) {
      const double total = count * r + (n - count);
      double pick = unit(rng) * total;
      int v = n - 1;
      for (int u = 0; u < n; ++u) {
        pick -= mutant[static_cast<std::size_t>(u)] ? r : 1.0;
        if (pick < 0.0) {
          v = u;
          break;
        }
      }
      const auto& nbrs = g.adj[static_cast<std::size_t>(v)];
      const auto pos = static_cast<std::size_t>(
          std::uniform_int_distribution<std::size_t>(0, nbrs.size() - 1)(rng));
      const int u = nbrs[pos];
      if (mutant[static_cast<std::size_t>(u)] !=
          mutant[static_cast<std::size_t>(v)]) {
        mutant[static_cast<std::size_t>(u)] = mutant[static_cast<std::size_t>(v)];
        count += mutant[static_cast<std::size_t>(v)] ? 1 : -1;
      }
    }
    if (count == n) ++fixations;
  }

  NaiveEstimate est;
  est.runs = runs;
  est.fixations = fixations;
  est.p_hat = static_cast<double>(fixations) / static_cast<double>(runs);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) /
                          static_cast<double>(runs));
  return est;
}

}  // namespace testsupport
