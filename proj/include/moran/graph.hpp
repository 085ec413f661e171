#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace moran {

// Simple undirected graph on vertices 0..n-1.  Edges are stored once as
// (min, max) pairs sorted lexicographically; adjacency lists are sorted.
// Instances are built through build_graph() or the family constructors and
// are not meant to be mutated afterwards.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj;

  int m() const { return static_cast<int>(edges.size()); }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  bool has_edge(int u, int v) const;
};

// Validates vertex ranges, rejects self-loops (naming the offending pair),
// deduplicates parallel edges, and canonicalizes storage.
Graph build_graph(int n, std::vector<std::pair<int, int>> edge_list);

bool is_connected(const Graph& g);

// Benchmark families.  Conventions: the star center is vertex 0; the path is
// 0-1-...-(n-1); the cycle closes n-1 back to 0.
Graph make_complete(int n);  // n >= 1
Graph make_cycle(int n);     // n >= 3
Graph make_star(int n);      // n >= 2
Graph make_path(int n);      // n >= 1

// Clique-with-noses graph on 2n vertices: vertices 0..n-1 form a clique and
// "nose" n+j is a pendant vertex attached to clique vertex j.  Every clique
// vertex has degree n, every nose degree 1.  n = 1 degenerates to one edge.
Graph make_urchin(int n);  // n >= 1

// Clique plus independent set on n vertices.  V1 = {0 .. n/(phi+1)-1} is a
// clique; the remaining phi*n/(phi+1) vertices ("noses") are independent,
// and nose j (vertex |V1|+j) is adjacent to clique vertices (j+t) mod |V1|
// for t = 0..phi-1.  Every nose has degree phi and every clique vertex has
// degree |V1|-1+phi^2.  Requires: phi >= 2, phi^2 <= n, (phi+1) | n, and
// n/(phi+1) >= phi.  Violations name the failed constraint.
Graph make_phi_urchin(int n, int phi);

// Edge-list text format: first significant line "n m", then m lines "u v"
// with 0-indexed endpoints.  Lines starting with '#' and blank lines are
// ignored.  Serialization is canonical: edges as sorted (min, max) pairs.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);
std::string serialize_edge_list(const Graph& g);
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

}  // namespace moran
