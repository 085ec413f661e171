#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "moran/graph.hpp"
#include "moran/rng.hpp"

namespace moran {

// Mutant configuration with incrementally maintained boundary information.
// cross[v] counts the neighbors of v whose state differs from v's; the
// boundary edge set {xy in E : x mutant, y not} is derivable from it and is
// recomputable from scratch for consistency checks.
struct Configuration {
  const Graph* g = nullptr;
  std::vector<std::uint8_t> mutant;  // 0/1 per vertex
  std::vector<int> cross;            // opposite-state neighbor counts
  int mutant_count = 0;

  static Configuration from_set(const Graph& g, const std::vector<int>& verts);

  bool is_empty() const { return mutant_count == 0; }
  bool is_full() const { return mutant_count == g->n; }
  bool is_absorbing() const { return is_empty() || is_full(); }

  // Flips the state of v and updates cross counts of v and its neighbors.
  void flip(int v);

  long long boundary_edge_count() const;  // from cross counts, O(n)
  std::vector<std::pair<int, int>> boundary_recomputed() const;  // O(n + m)
  bool boundary_consistent() const;  // cross counts vs recomputation
};

// Fenwick-indexed sampling tree over non-negative per-vertex weights:
// O(log n) point update and O(log n) sampling by prefix weight.
class WeightTree {
 public:
  explicit WeightTree(int n);
  void assign(const std::vector<double>& w);
  void set(int i, double w);
  double get(int i) const { return leaf_[static_cast<std::size_t>(i)]; }
  double total() const;
  // Smallest i with prefix_sum(i) > u, assuming 0 <= u < total().
  int sample(double u) const;

 private:
  int n_;
  std::vector<double> leaf_;
  std::vector<double> tree_;  // 1-based Fenwick array of range sums
};

// Self-loop-eliminated sampler for the fitness-r process: an effective step
// picks a boundary edge xy (x mutant, y not) and either spreads along it with
// weight r/deg(x) (y becomes mutant) or retracts with weight 1/deg(y)
// (x stops being mutant).  Implemented by sampling a vertex v proportional to
//   w(v) = (mutant(v) ? r : 1) * cross(v) / deg(v)
// and then a uniformly random opposite-state neighbor of v: if v is a mutant
// the neighbor is converted, otherwise v converts (kills) the sampled mutant
// neighbor.  This reproduces the per-edge weights above exactly.
class EffectiveStepSampler {
 public:
  EffectiveStepSampler(const Graph& g, double r, Configuration start);

  bool absorbing() const { return cfg_.is_absorbing(); }
  const Configuration& config() const { return cfg_; }
  double total_weight() const { return tree_.total(); }

  // Performs one effective step and returns the flipped vertex, or -1 if the
  // configuration is absorbing.
  int step(Rng& rng);

  // P(next effective step flips vertex v), computed from the maintained
  // weights (not re-derived from the configuration) — lets tests compare the
  // sampler's actual distribution against the defining equations.
  std::vector<double> flip_distribution() const;

  // Recomputes all weights from the configuration (drift insurance; also
  // called periodically from step()).
  void rebuild();

 private:
  double vertex_weight(int v) const;
  void after_flip(int v);

  const Graph* g_;
  double r_;
  Configuration cfg_;
  std::vector<double> w_;
  WeightTree tree_;
  long long steps_since_rebuild_ = 0;
};

enum class RunOutcome { fixation, extinction, timeout };

struct RunResult {
  RunOutcome outcome;
  long long steps;  // effective steps taken
};

// One trajectory to absorption.  A pure function of (seed, run_index): the
// same key yields the same trajectory regardless of scheduling.
RunResult run_to_absorption(const Graph& g, double r,
                            const std::vector<int>& start,
                            std::uint64_t seed, std::uint64_t run_index,
                            long long max_steps);

struct SimParams {
  double r = 1.0;
  long runs = 10000;
  std::uint64_t seed = 0;
  long long max_steps = 1000000000;  // effective steps per run
  int threads = 1;
};

struct Estimate {
  long runs_requested = 0;
  long runs_completed = 0;  // excludes timeouts
  long fixations = 0;
  long timeouts = 0;
  double p_hat = 0.0;    // fixations / runs_completed
  double std_err = 0.0;  // sqrt(p_hat (1 - p_hat) / runs_completed)
  double ci_low = 0.0;   // normal-approximation 95% interval, clamped to [0,1]
  double ci_high = 0.0;
  double mean_steps = 0.0;  // over completed runs
};

// Monte Carlo fixation estimate from a fixed start set.  Runs are keyed by
// consecutive run indices; the result is independent of thread count.
// Throws ConvergenceError if every run timed out.
Estimate estimate_fixation(const Graph& g, const std::vector<int>& start,
                           const SimParams& params);

struct GraphEstimate {
  Estimate graph;  // p_hat = mean of per-vertex p_hats; counts are totals
  std::vector<Estimate> per_vertex;
};

// Splits params.runs across single-vertex starts as evenly as possible (the
// first runs % n vertices receive one extra run) and aggregates: the graph
// p_hat is the unweighted mean of the per-vertex estimates, matching the
// uniformly-random-mutant definition of the graph fixation probability.
GraphEstimate estimate_graph_fixation(const Graph& g, const SimParams& params);

}  // namespace moran
