#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "moran/graph.hpp"

namespace moran {

struct ExactOptions {
  int size_cap = 22;          // refuse graphs with more vertices than this
  double tol = 1e-13;         // max-norm change per sweep to declare converged
  long max_sweeps = 1000000;  // hard iteration cap
};

// Fixation probability f_r(S) for every configuration S of mutants, indexed
// by bitmask (bit v set = vertex v mutant).  values[0] = 0 and
// values[2^n - 1] = 1 exactly; interior entries satisfy, up to `residual`,
//
//   f(S) = [ sum_{xy in boundary(S)} r/deg(x) * f(S+y) + 1/deg(y) * f(S-x) ]
//          / [ sum_{xy in boundary(S)} r/deg(x) + 1/deg(y) ]
//
// where boundary(S) are edges xy with x in S, y not in S.
struct FixationTable {
  int n = 0;
  double r = 0.0;
  std::vector<double> values;
  double residual = 0.0;  // max-norm violation of the equations above
  long sweeps = 0;

  double vertex(int v) const { return values[std::uint32_t{1} << v]; }
  double graph_mean() const;  // average over single-mutant starts
};

// Solves the full system by Gauss-Seidel sweeps ordered by increasing
// configuration population count.  Requires a connected graph, r > 0 and
// n <= size_cap.
FixationTable exact_fixation_all(const Graph& g, double r,
                                 const ExactOptions& opt = {});

double fixation_of_vertex(const Graph& g, double r, int v);
double fixation_of_graph(const Graph& g, double r);

struct L0Result {
  int n = 0;
  double r = 0.0;
  std::vector<double> values;  // indexed by bitmask
  double residual = 0.0;
  long sweeps = 0;
};

// Weighted single-pair recurrences: for interior S and a boundary pair
// (x, y) with weights d,
//
//   p(S) = (r * d_x * p(S+y) + d_y * p(S-x)) / (r * d_x + d_y).
//
// solve_L0_min_pair computes the least fixed point of the variant that
// minimizes the right-hand side over all boundary pairs of S (monotone value
// iteration from the all-zero interior); with d_v = 1/deg(v) it lower-bounds
// the true fixation probability.  solve_L0_given_pairs solves the linear
// system for one fixed selector S -> (x, y); the selector must return a
// boundary pair of S.  Both require a connected graph, r > 1, positive
// weights and n <= size_cap.
using PairSelector =
    std::function<std::pair<int, int>(std::uint32_t mask)>;

L0Result solve_L0_min_pair(const Graph& g, double r,
                           const std::vector<double>& d,
                           const ExactOptions& opt = {});
L0Result solve_L0_given_pairs(const Graph& g, double r,
                              const std::vector<double>& d,
                              const PairSelector& select,
                              const ExactOptions& opt = {});

}  // namespace moran
