#pragma once

#include <vector>

namespace moran {

// Analysis of the clique-with-noses graph on 2n vertices (see make_urchin):
// n clique vertices of degree n, each matched to a pendant "nose" of
// degree 1.  Configurations lump exactly into classes (k, i, x):
//   k = number of mutant noses,
//   x = mutant noses whose matched clique vertex is NOT mutant ("isolated
//       noses"),
//   i = mutant clique vertices whose nose is NOT mutant ("isolated clique
//       vertices"),
// with 0 <= x <= k and 0 <= i <= n - k; the mutant clique count is
// m = i + k - x.  Exchangeability of clique positions makes the lumped
// process Markov.
//
// Unnormalized transition weights out of (k, i, x), scaled by n:
//   within level k:
//     (i, x-1): r*x*(n+m)      nose or clique converts an isolated nose's partner
//     (i+1, x): r*m*(n-k-i)    clique converts a fresh clique vertex
//     (i-1, x): i*(2n-m)       isolated clique vertex is overwritten
//     (i, x+1): (k-x)*(n-m)    covered partner is overwritten
//   to level k+1 at (i-1, x):  r*i   isolated clique vertex converts its nose
//   to level k-1 at (i, x-1):  x     isolated nose overwritten by its partner

// --- Level chains (pessimistic one-dimensional reductions) ---------------

// Climb chain for level k (1 <= k <= n-1): states i = 0..k track the mutant
// clique count while every mutant nose stays protected pessimistically;
// returns h[0..k], the probability of reaching k+1 mutant noses before k-1
// from each state.  h obeys
//   h_i = alpha_i h_{i+1} + beta_i h_{i-1},  alpha_i ~ r((k-i)n + i(n-i)),
//   beta_i ~ i(n-i), failure weight ~ (k-i),  h_0 = rn/(rn+1) h_1.
std::vector<double> h_values(int n, double r, int k);

// Spread chain for level k: states i = k..n track the mutant clique count
// once all k noses are covered; index j of the result is state i = k + j.
// s_k = h_kk * s_{k+1} with failure otherwise; interior coefficients
//   up ~ r i(n-i), down ~ (i-k)n + i(n-i), success ~ r(i-k).
std::vector<double> s_values(int n, double r, int k, double h_kk);

struct LevelSummary {
  int k = 0;
  double h0 = 0.0;      // h_0^k: climb value from the all-noses-isolated state
  double hk = 0.0;      // h_k^k: climb value from the all-noses-covered state
  double sk = 0.0;      // s_k^k: spread value from the all-covered state
  double lambda = 0.0;  // h0 * sk / (1 - h0 * sk)
  bool saturated = false;  // h0 * sk rounded to 1; lambda clamped
};

// Per-level summaries for k = 1..n-1.  threads > 1 computes levels
// concurrently (levels are independent; assembly is deterministic).
std::vector<LevelSummary> lambda_sweep(int n, double r, int threads = 1);

// Lower bound on the fixation probability of a single mutant nose: the
// birth-death chain over nose counts with odds lambda_k.  Requires n >= 2,
// r > 1.
double nose_lower_bound(int n, double r);
double nose_lower_bound(const std::vector<LevelSummary>& sweep);

// c(r) = 3 + (259 r - 15) / ((r - 2)(r - 5)) for r > 5: the nose lower bound
// satisfies p >= 1 - c(r)/n for large n.
double amplifier_constant(double r);

// --- Exact lumped solvers -------------------------------------------------

// Probability of reaching k+1 mutant noses before k-1 from every class
// (i, x) of level k; result indexed [i * (k+1) + x] for i = 0..n-k,
// x = 0..k.  Gauss-Seidel on the within-level chain; residual <= 1e-12.
// Requires 1 <= k <= n-1, r > 0, n <= 200.
std::vector<double> q_exact_level(int n, double r, int k);

struct LumpedState {
  int k = 0;
  int i = 0;
  int x = 0;
};

// Exact fixation probability of the lumped process from any class.  The
// single-nose start is {k=1, i=0, x=1}; a single clique vertex is
// {k=0, i=1, x=0}.  Requires 2 <= n <= 60, r > 0.
double urchin_exact_fixation(int n, double r, const LumpedState& start);

// Per-class fixation values for every level (same indexing as
// q_exact_level per level), plus the solver residual.
struct LumpedFixation {
  int n = 0;
  double r = 0.0;
  std::vector<std::vector<double>> levels;  // levels[k][i*(k+1)+x]
  double residual = 0.0;
  long sweeps = 0;
};
LumpedFixation urchin_exact_fixation_all(int n, double r);

// --- Structural inequalities ---------------------------------------------

// Checks, for every level k, that the exact within-level values satisfy
//   q_{i,x} > q_{i-1,x-1}          (losing a covered pair hurts), and
//   q_{i,x} >= q at the collapsed one-dimensional state with the same
//   mutant clique count (strict when min(i,x) >= 1).
// Requires 2 <= n <= 40, r > 1.
struct DominationReport {
  bool ok = false;
  double min_pair_margin = 0.0;       // min over q_{i,x} - q_{i-1,x-1}
  double min_collapse_margin = 0.0;   // min over q_{i,x} - p_{k+i-x}, min(i,x)>=1
  double max_residual = 0.0;          // worst per-level solver residual
  int levels_checked = 0;
};
DominationReport verify_domination(int n, double r);

}  // namespace moran
