#pragma once

// Closed-form fixation bounds and the per-vertex amplifier/suppressor report.

#include <cstdint>
#include <vector>

#include "moran/exact.hpp"
#include "moran/graph.hpp"
#include "moran/simulate.hpp"

namespace moran {

// Heat-based lower bound for an advantageous mutant placed on v:
//   (r - 1) / (r + deg(v) / deg_min),
// clamped to [0, 1].  Requires a connected graph and r > 1.
double thermal_lower_bound(const Graph& g, double r, int v);

// Fixation probability of a single mutant on any regular (vertex-transitive
// heat) graph: (1 - 1/r) / (1 - 1/r^n); the r = 1 limit is 1/n.  Numerically
// stable for large n: when 1/r^n underflows this returns 1 - 1/r.
// Requires n >= 1 and r > 0.
double isothermal_value(int n, double r);

// Upper bound from absorbing the process as soon as a second vertex is
// infected: r / (r + Q_v) with Q_v = sum over neighbors x of 1/deg(x).
// Requires a connected graph and r > 0.
double single_mutant_upper_bound(const Graph& g, double r, int v);

// Graph-level upper bound from the two-mutant relaxation:
//   max over v, max over u in N(v) of  2r^2 / (2r^2 + Q_v * Q_uv),
// Q_uv = sum_{x in N(v), x != u} 1/deg(x) + sum_{x in N(u), x != v} 1/deg(x).
// Taking the max over all v (the true maximizing vertex is unknown without
// solving) keeps it a valid upper bound on the graph fixation probability.
// Requires a connected graph with n >= 2 and r > 0.
double pair_upper_bound(const Graph& g, double r);

enum class VertexTag { amplifying, suppressing, neutral };

const char* to_string(VertexTag t);

struct VertexBounds {
  int vertex = 0;
  double thermal_lb = 0;
  double single_mutant_ub = 0;
  double value = 0;          // exact solve or Monte Carlo estimate
  double value_std_err = 0;  // 0 for the exact method
  VertexTag tag = VertexTag::neutral;
};

struct ClassifyOptions {
  bool use_exact = true;  // false: Monte Carlo per vertex
  long mc_runs = 10000;   // per vertex (Monte Carlo method)
  std::uint64_t seed = 0;
  long long max_steps = 1000000000;
  int threads = 1;
  double c = 1.0;  // report how many vertices exceed 1 - c/n
  ExactOptions exact;
};

struct VertexBoundReport {
  int n = 0;
  double r = 0;
  bool exact_method = true;
  double isothermal = 0;  // regular-graph benchmark the tags compare against
  double pair_ub = 0;
  double epsilon = 0;  // largest per-vertex classification tolerance used
  double c = 1;
  int count_above = 0;  // vertices with value > 1 - c/n
  std::vector<VertexBounds> vertices;
};

// Compares every vertex's fixation probability against the regular-graph
// benchmark.  A vertex is tagged amplifying when value > benchmark + eps,
// suppressing when value < benchmark - eps, neutral otherwise, with the
// per-vertex tolerance eps = max(2 * solver residual, 4 * MC standard error,
// 1e-12); the absolute floor covers iterative-solver error on values the
// residual alone understates.
// This is a finite-n diagnostic; it makes no asymptotic class claim.
// Requires a connected graph and r > 1.
VertexBoundReport classify_vertices(const Graph& g, double r,
                                    const ClassifyOptions& opt = {});

}  // namespace moran
