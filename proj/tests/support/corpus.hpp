#pragma once

// Exhaustive corpus of connected graphs up to isomorphism for small n.
// Enumerates every labeled graph as an edge bitmask, keeps the connected
// ones, canonicalizes by the minimum bitmask over all vertex permutations,
// and materializes one Graph per isomorphism class.  Expected class counts
// for n = 2..6 are 1, 2, 6, 21, 112.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "moran/graph.hpp"

namespace corpus {

// Fixed enumeration of vertex pairs (u < v) for one n.
inline std::vector<std::pair<int, int>> vertex_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return pairs;
}

inline bool mask_connected(int n, const std::vector<std::pair<int, int>>& pairs,
                           std::uint32_t mask) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (mask >> p & 1u) {
      adj[static_cast<std::size_t>(pairs[p].first)] |=
          std::uint32_t{1} << pairs[p].second;
      adj[static_cast<std::size_t>(pairs[p].second)] |=
          std::uint32_t{1} << pairs[p].first;
    }
  }
  std::uint32_t seen = 1, frontier = 1;
  while (frontier != 0) {
    std::uint32_t next = 0;
    for (int v = 0; v < n; ++v) {
      if (frontier >> v & 1u) next |= adj[static_cast<std::size_t>(v)];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (std::uint32_t{1} << n) - 1;
}

// All connected graphs on exactly n vertices, one per isomorphism class,
// in a deterministic order.  Cached per n (the n=6 enumeration visits
// 2^15 masks x 720 permutations once).
inline const std::vector<moran::Graph>& connected_graphs(int n) {
  static std::map<int, std::vector<moran::Graph>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const std::vector<std::pair<int, int>> pairs = vertex_pairs(n);
  const int np = static_cast<int>(pairs.size());

  // pair index -> pair index, one table per permutation of the vertices
  std::vector<int> pair_at(static_cast<std::size_t>(n) * n, 0);
  for (int p = 0; p < np; ++p) {
    pair_at[static_cast<std::size_t>(pairs[p].first) * n + pairs[p].second] = p;
    pair_at[static_cast<std::size_t>(pairs[p].second) * n + pairs[p].first] = p;
  }
  std::vector<std::vector<int>> perm_tables;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> table(static_cast<std::size_t>(np));
    for (int p = 0; p < np; ++p) {
      const int u = perm[static_cast<std::size_t>(pairs[p].first)];
      const int v = perm[static_cast<std::size_t>(pairs[p].second)];
      table[static_cast<std::size_t>(p)] =
          pair_at[static_cast<std::size_t>(u) * n + v];
    }
    perm_tables.push_back(std::move(table));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::set<std::uint32_t> canonical;
  const std::uint32_t top = std::uint32_t{1} << np;
  for (std::uint32_t mask = 0; mask < top; ++mask) {
    if (!mask_connected(n, pairs, mask)) continue;
    std::uint32_t best = mask;
    for (const auto& table : perm_tables) {
      std::uint32_t mapped = 0;
      for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
        const int p = __builtin_ctz(rest);
        mapped |= std::uint32_t{1} << table[static_cast<std::size_t>(p)];
      }
      if (mapped < best) best = mapped;
    }
    canonical.insert(best);
  }

  std::vector<moran::Graph> graphs;
  graphs.reserve(canonical.size());
  for (std::uint32_t mask : canonical) {
    std::vector<std::pair<int, int>> edges;
    for (int p = 0; p < np; ++p) {
      if (mask >> p & 1u) edges.push_back(pairs[static_cast<std::size_t>(p)]);
    }
    graphs.push_back(moran::build_graph(n, std::move(edges)));
  }
  return cache.emplace(n, std::move(graphs)).first->second;
}

// Connected graphs for every vertex count in [n_min, n_max].
inline std::vector<moran::Graph> connected_graphs_up_to(int n_min, int n_max) {
  std::vector<moran::Graph> all;
  for (int n = n_min; n <= n_max; ++n) {
    const auto& g = connected_graphs(n);
    all.insert(all.end(), g.begin(), g.end());
  }
  return all;
}

}  // namespace corpus
