#include "moran/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "moran/errors.hpp"

namespace moran {

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n || v >= n) return false;
  return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

Graph build_graph(int n, std::vector<std::pair<int, int>> edge_list) {
  if (n < 1) {
    throw ConstraintError("graph needs at least one vertex, got n=" +
                          std::to_string(n));
  }
  for (auto& [u, v] : edge_list) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw ConstraintError("edge (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") has an endpoint outside 0.." +
                            std::to_string(n - 1));
    }
    if (u == v) {
      throw ConstraintError("self-loop (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") is not allowed");
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edge_list.begin(), edge_list.end());
  edge_list.erase(std::unique(edge_list.begin(), edge_list.end()),
                  edge_list.end());

  Graph g;
  g.n = n;
  g.edges = std::move(edge_list);
  g.adj.assign(n, {});
  for (auto [u, v] : g.edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

bool is_connected(const Graph& g) {
  if (g.n <= 0) return false;
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : g.adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == g.n;
}

Graph make_complete(int n) {
  if (n < 1) throw ConstraintError("complete graph needs n >= 1");
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return build_graph(n, std::move(e));
}

Graph make_cycle(int n) {
  if (n < 3) throw ConstraintError("cycle needs n >= 3, got n=" + std::to_string(n));
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return build_graph(n, std::move(e));
}

Graph make_star(int n) {
  if (n < 2) throw ConstraintError("star needs n >= 2, got n=" + std::to_string(n));
  std::vector<std::pair<int, int>> e;
  for (int v = 1; v < n; ++v) e.emplace_back(0, v);
  return build_graph(n, std::move(e));
}

Graph make_path(int n) {
  if (n < 1) throw ConstraintError("path needs n >= 1, got n=" + std::to_string(n));
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return build_graph(n, std::move(e));
}

Graph make_urchin(int n) {
  if (n < 1) throw ConstraintError("urchin needs n >= 1, got n=" + std::to_string(n));
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  for (int j = 0; j < n; ++j) e.emplace_back(j, n + j);
  return build_graph(2 * n, std::move(e));
}

Graph make_phi_urchin(int n, int phi) {
  if (phi < 2) {
    throw ConstraintError("phi-urchin needs phi >= 2, got phi=" +
                          std::to_string(phi));
  }
  if (static_cast<long long>(phi) * phi > n) {
    throw ConstraintError("phi-urchin needs phi^2 <= n; phi=" +
                          std::to_string(phi) + " is too large for n=" +
                          std::to_string(n));
  }
  if (n % (phi + 1) != 0) {
    throw ConstraintError("phi-urchin needs (phi+1) to divide n; " +
                          std::to_string(phi + 1) + " does not divide " +
                          std::to_string(n));
  }
  const int clique = n / (phi + 1);
  if (clique < phi) {
    throw ConstraintError("phi-urchin needs n/(phi+1) >= phi; clique size " +
                          std::to_string(clique) + " < phi=" +
                          std::to_string(phi));
  }
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < clique; ++u)
    for (int v = u + 1; v < clique; ++v) e.emplace_back(u, v);
  const int noses = n - clique;  // = phi * clique
  for (int j = 0; j < noses; ++j)
    for (int t = 0; t < phi; ++t) e.emplace_back((j + t) % clique, clique + j);
  return build_graph(n, std::move(e));
}

Graph parse_edge_list(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;  // blank
    if (line[first] == '#') continue;          // comment
    lines.push_back(line);
  }
  if (lines.empty()) throw ConstraintError("edge list is empty: missing 'n m' header");

  auto parse_two = [](const std::string& s, long long& a, long long& b) {
    std::istringstream ss(s);
    std::string extra;
    if (!(ss >> a >> b)) return false;
    if (ss >> extra) return false;
    return true;
  };

  long long n = 0, m = 0;
  if (!parse_two(lines[0], n, m) || n < 1 || m < 0) {
    throw ConstraintError("bad edge-list header '" + lines[0] +
                          "': expected 'n m' with n >= 1, m >= 0");
  }
  if (static_cast<long long>(lines.size()) - 1 != m) {
    throw ConstraintError("edge list declares m=" + std::to_string(m) +
                          " edges but contains " +
                          std::to_string(lines.size() - 1) + " edge lines");
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 1; i <= m; ++i) {
    long long u = 0, v = 0;
    if (!parse_two(lines[static_cast<std::size_t>(i)], u, v)) {
      throw ConstraintError("bad edge line '" + lines[static_cast<std::size_t>(i)] +
                            "': expected 'u v'");
    }
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw ConstraintError("edge (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") has an endpoint outside 0.." +
                            std::to_string(n - 1));
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return build_graph(static_cast<int>(n), std::move(edges));
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.n << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
  return out.str();
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConstraintError("cannot open graph file: " + path);
  return parse_edge_list(in);
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConstraintError("cannot write graph file: " + path);
  out << serialize_edge_list(g);
  if (!out) throw ConstraintError("failed writing graph file: " + path);
}

}  // namespace moran
