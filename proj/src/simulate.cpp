#include "moran/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "moran/errors.hpp"

namespace moran {

Configuration Configuration::from_set(const Graph& g,
                                      const std::vector<int>& verts) {
  Configuration c;
  c.g = &g;
  c.mutant.assign(g.n, 0);
  for (int v : verts) {
    if (v < 0 || v >= g.n) {
      throw ConstraintError("start vertex " + std::to_string(v) +
                            " outside 0.." + std::to_string(g.n - 1));
    }
    c.mutant[v] = 1;
  }
  c.mutant_count = 0;
  for (int v = 0; v < g.n; ++v) c.mutant_count += c.mutant[v];
  c.cross.assign(g.n, 0);
  for (auto [u, v] : g.edges) {
    if (c.mutant[u] != c.mutant[v]) {
      ++c.cross[u];
      ++c.cross[v];
    }
  }
  return c;
}

void Configuration::flip(int v) {
  mutant[v] ^= 1;
  mutant_count += mutant[v] ? 1 : -1;
  cross[v] = g->degree(v) - cross[v];
  for (int u : g->adj[v]) {
    if (mutant[u] == mutant[v]) {
      --cross[u];
    } else {
      ++cross[u];
    }
  }
}

long long Configuration::boundary_edge_count() const {
  long long total = 0;
  for (int v = 0; v < g->n; ++v) {
    if (mutant[v]) total += cross[v];
  }
  return total;
}

std::vector<std::pair<int, int>> Configuration::boundary_recomputed() const {
  std::vector<std::pair<int, int>> out;
  for (auto [u, v] : g->edges) {
    if (mutant[u] && !mutant[v]) out.emplace_back(u, v);
    if (mutant[v] && !mutant[u]) out.emplace_back(v, u);
  }
  return out;
}

bool Configuration::boundary_consistent() const {
  int count = 0;
  std::vector<int> fresh(g->n, 0);
  for (auto [u, v] : g->edges) {
    if (mutant[u] != mutant[v]) {
      ++fresh[u];
      ++fresh[v];
    }
  }
  for (int v = 0; v < g->n; ++v) count += mutant[v];
  return fresh == cross && count == mutant_count;
}

WeightTree::WeightTree(int n) : n_(n), leaf_(n, 0.0), tree_(n + 1, 0.0) {}

void WeightTree::assign(const std::vector<double>& w) {
  leaf_ = w;
  std::fill(tree_.begin(), tree_.end(), 0.0);
  for (int i = 1; i <= n_; ++i) {
    tree_[i] += leaf_[i - 1];
    const int parent = i + (i & -i);
    if (parent <= n_) tree_[parent] += tree_[i];
  }
}

void WeightTree::set(int i, double w) {
  const double delta = w - leaf_[i];
  if (delta == 0.0) return;
  leaf_[i] = w;
  for (int j = i + 1; j <= n_; j += j & -j) tree_[j] += delta;
}

double WeightTree::total() const {
  double sum = 0.0;
  for (int j = n_; j > 0; j -= j & -j) sum += tree_[j];
  return sum;
}

int WeightTree::sample(double u) const {
  int pos = 0;
  int step = 1;
  while (step * 2 <= n_) step *= 2;
  for (; step > 0; step /= 2) {
    const int next = pos + step;
    if (next <= n_ && tree_[next] <= u) {
      u -= tree_[next];
      pos = next;
    }
  }
  return pos;  // 0-based index of the first leaf with prefix sum > u
}

EffectiveStepSampler::EffectiveStepSampler(const Graph& g, double r,
                                           Configuration start)
    : g_(&g), r_(r), cfg_(std::move(start)), w_(g.n, 0.0), tree_(g.n) {
  if (!(r > 0.0)) {
    throw DomainError("sampler needs fitness r > 0, got r=" + std::to_string(r));
  }
  rebuild();
}

double EffectiveStepSampler::vertex_weight(int v) const {
  if (cfg_.cross[v] == 0) return 0.0;
  const double fit = cfg_.mutant[v] ? r_ : 1.0;
  return fit * cfg_.cross[v] / g_->degree(v);
}

void EffectiveStepSampler::rebuild() {
  for (int v = 0; v < g_->n; ++v) w_[v] = vertex_weight(v);
  tree_.assign(w_);
  steps_since_rebuild_ = 0;
}

void EffectiveStepSampler::after_flip(int v) {
  w_[v] = vertex_weight(v);
  tree_.set(v, w_[v]);
  for (int u : g_->adj[v]) {
    w_[u] = vertex_weight(u);
    tree_.set(u, w_[u]);
  }
}

int EffectiveStepSampler::step(Rng& rng) {
  if (cfg_.is_absorbing()) return -1;
  if (++steps_since_rebuild_ >= (1 << 20)) rebuild();

  int v = -1;
  for (int attempt = 0; attempt < 2; ++attempt) {
    v = tree_.sample(rng.next_double() * tree_.total());
    if (v < g_->n && cfg_.cross[v] > 0 && w_[v] > 0.0) break;
    rebuild();  // accumulated rounding drift; resample against exact weights
    v = -1;
  }
  if (v < 0) {
    throw ConvergenceError("sampler found no active vertex in a non-absorbing configuration");
  }

  // Uniform opposite-state neighbor of v.
  int remaining = static_cast<int>(rng.below(cfg_.cross[v]));
  int target = -1;
  for (int u : g_->adj[v]) {
    if (cfg_.mutant[u] != cfg_.mutant[v]) {
      if (remaining == 0) {
        target = u;
        break;
      }
      --remaining;
    }
  }
  cfg_.flip(target);
  after_flip(target);
  return target;
}

std::vector<double> EffectiveStepSampler::flip_distribution() const {
  std::vector<double> dist(g_->n, 0.0);
  const double total = tree_.total();
  if (total <= 0.0) return dist;
  for (int v = 0; v < g_->n; ++v) {
    if (w_[v] <= 0.0) continue;
    const double share = w_[v] / total / cfg_.cross[v];
    for (int u : g_->adj[v]) {
      if (cfg_.mutant[u] != cfg_.mutant[v]) dist[u] += share;
    }
  }
  return dist;
}

RunResult run_to_absorption(const Graph& g, double r,
                            const std::vector<int>& start, std::uint64_t seed,
                            std::uint64_t run_index, long long max_steps) {
  Rng rng(seed, run_index);
  EffectiveStepSampler sampler(g, r, Configuration::from_set(g, start));
  long long steps = 0;
  while (!sampler.absorbing()) {
    if (steps >= max_steps) return {RunOutcome::timeout, steps};
    sampler.step(rng);
    ++steps;
  }
  return {sampler.config().is_full() ? RunOutcome::fixation
                                     : RunOutcome::extinction,
          steps};
}

namespace {

struct RunTally {
  long completed = 0;
  long fixations = 0;
  long timeouts = 0;
  long long steps = 0;  // over completed runs

  void absorb(const RunTally& o) {
    completed += o.completed;
    fixations += o.fixations;
    timeouts += o.timeouts;
    steps += o.steps;
  }
};

void check_sim_inputs(const Graph& g, const SimParams& p) {
  if (!(p.r > 0.0)) {
    throw DomainError("simulation needs fitness r > 0, got r=" +
                      std::to_string(p.r));
  }
  if (p.runs < 1) throw ConstraintError("simulation needs runs >= 1");
  if (p.max_steps < 0) throw ConstraintError("max_steps must be >= 0");
  if (p.threads < 1) throw ConstraintError("threads must be >= 1");
  if (!is_connected(g)) {
    throw GraphInvalidError("simulation requires a connected graph");
  }
}

RunTally tally_range(const Graph& g, const std::vector<int>& start,
                     const SimParams& p, std::uint64_t index_offset, long lo,
                     long hi) {
  RunTally t;
  for (long i = lo; i < hi; ++i) {
    const RunResult res = run_to_absorption(g, p.r, start, p.seed,
                                            index_offset + static_cast<std::uint64_t>(i),
                                            p.max_steps);
    if (res.outcome == RunOutcome::timeout) {
      ++t.timeouts;
    } else {
      ++t.completed;
      t.steps += res.steps;
      if (res.outcome == RunOutcome::fixation) ++t.fixations;
    }
  }
  return t;
}

Estimate to_estimate(const RunTally& t, long requested) {
  Estimate e;
  e.runs_requested = requested;
  e.runs_completed = t.completed;
  e.fixations = t.fixations;
  e.timeouts = t.timeouts;
  if (t.completed == 0) {
    throw ConvergenceError("every run hit the step cap; raise max_steps");
  }
  e.p_hat = static_cast<double>(t.fixations) / t.completed;
  e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / t.completed);
  e.ci_low = std::max(0.0, e.p_hat - 1.96 * e.std_err);
  e.ci_high = std::min(1.0, e.p_hat + 1.96 * e.std_err);
  e.mean_steps = static_cast<double>(t.steps) / t.completed;
  return e;
}

RunTally run_tally(const Graph& g, const std::vector<int>& start,
                   const SimParams& p, std::uint64_t index_offset) {
  const int threads = std::min<long>(p.threads, p.runs);
  if (threads <= 1) return tally_range(g, start, p, index_offset, 0, p.runs);

  std::vector<RunTally> parts(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const long chunk = (p.runs + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long lo = t * chunk;
    const long hi = std::min(p.runs, lo + chunk);
    pool.emplace_back([&, t, lo, hi] {
      parts[t] = tally_range(g, start, p, index_offset, lo, hi);
    });
  }
  for (auto& th : pool) th.join();
  RunTally total;
  for (const auto& part : parts) total.absorb(part);
  return total;
}

}  // namespace

Estimate estimate_fixation(const Graph& g, const std::vector<int>& start,
                           const SimParams& params) {
  check_sim_inputs(g, params);
  return to_estimate(run_tally(g, start, params, 0), params.runs);
}

GraphEstimate estimate_graph_fixation(const Graph& g, const SimParams& params) {
  check_sim_inputs(g, params);
  if (params.runs < g.n) {
    throw ConstraintError("per-vertex estimation needs at least one run per "
                          "vertex: runs=" + std::to_string(params.runs) +
                          " < n=" + std::to_string(g.n));
  }
  const long base = params.runs / g.n;
  const long extra = params.runs % g.n;

  GraphEstimate ge;
  ge.per_vertex.reserve(g.n);
  RunTally total;
  std::uint64_t offset = 0;
  double p_sum = 0.0, var_sum = 0.0;
  for (int v = 0; v < g.n; ++v) {
    SimParams pv = params;
    pv.runs = base + (v < extra ? 1 : 0);
    const RunTally t = run_tally(g, {v}, pv, offset);
    offset += static_cast<std::uint64_t>(pv.runs);
    Estimate ev;
    try {
      ev = to_estimate(t, pv.runs);
    } catch (const ConvergenceError&) {
      throw ConvergenceError("every run for start vertex " + std::to_string(v) +
                             " hit the step cap; raise max_steps");
    }
    p_sum += ev.p_hat;
    var_sum += ev.std_err * ev.std_err;
    total.absorb(t);
    ge.per_vertex.push_back(ev);
  }

  Estimate& eg = ge.graph;
  eg.runs_requested = params.runs;
  eg.runs_completed = total.completed;
  eg.fixations = total.fixations;
  eg.timeouts = total.timeouts;
  eg.p_hat = p_sum / g.n;
  eg.std_err = std::sqrt(var_sum) / g.n;
  eg.ci_low = std::max(0.0, eg.p_hat - 1.96 * eg.std_err);
  eg.ci_high = std::min(1.0, eg.p_hat + 1.96 * eg.std_err);
  eg.mean_steps = static_cast<double>(total.steps) / total.completed;
  return ge;
}

}  // namespace moran
