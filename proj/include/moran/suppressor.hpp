#pragma once

// Relaxed clique chain for the phi-urchin family, used as a numerical upper
// bound on the fixation probability of a single infected clique vertex.
//
// The chain tracks the number k of infected clique vertices while every
// spoke-to-independent-set infection and the halfway state are relaxed to
// immediate success (so its values upper-bound the true process).  States are
// k = 0..K with K = ceil(n/2); S_0 absorbs to failure, S_K to success, and
// each interior level also leaks to success with weight gamma_k (an
// independent-set vertex became infected).  The transition weights use the
// clique degree written as n + phi^2 - 1:
//
//   alpha_k = r k (n-k) / (n + phi^2 - 1)              (k -> k+1)
//   beta_k  = k (phi + (n-k) / (n + phi^2 - 1))        (k -> k-1)
//   gamma_k = r k phi^2 / (n + phi^2 - 1)              (k -> success)
//
// normalized by their sum.  Note the constructed phi-urchin graph has clique
// degree n/(phi+1) - 1 + phi^2; the chain keeps the n + phi^2 - 1 form on
// purpose, as a standalone bounding object (see README).

#include <vector>

namespace moran {

struct CliqueChainParams {
  int n = 0;     // total vertices of the underlying family member
  int phi = 0;   // spokes per independent-set vertex, >= 2
  double r = 0;  // mutant fitness, > 1
};

// Normalized one-step distribution out of interior level k (sums to 1).
struct CliqueChainCoefficients {
  double alpha = 0;  // to k+1
  double beta = 0;   // to k-1
  double gamma = 0;  // directly to success
};

// Requires 1 <= k <= ceil(n/2) - 1.
CliqueChainCoefficients clique_chain_coefficients(const CliqueChainParams& p,
                                                  int k);

// Values f(S_0)..f(S_K), K = ceil(n/2), with f(S_0) = 0 and f(S_K) = 1.
// Nondecreasing in k.  Requires n >= 2, phi >= 2, r > 1.
std::vector<double> clique_chain_values(const CliqueChainParams& p);

enum class SuppressorVerdict {
  pass,           // chain value below the 5 r phi / n bound, condition r <= phi/2 holds
  fail,           // chain value at or above the bound despite r <= phi/2
  not_in_regime,  // r > phi/2: the bounding argument makes no claim here
};

const char* to_string(SuppressorVerdict v);

struct SuppressorReport {
  int n = 0;
  int phi = 0;
  double r = 0;
  double chain_value = 0;  // relaxed-chain value at one infected clique vertex
  double bound = 0;        // 5 r phi / n
  double margin = 0;       // bound - chain_value
  bool in_regime = false;  // r <= phi / 2
  SuppressorVerdict verdict = SuppressorVerdict::fail;
};

// Solves the chain and compares f(S_1) against 5 r phi / n.  When r > phi/2
// the report carries verdict not_in_regime instead of a pass/fail claim.
// Requires n >= 3 (at least one interior level), phi >= 2, r > 1.
SuppressorReport suppressor_bound_check(int n, int phi, double r);

}  // namespace moran
