#pragma once

#include <cstddef>
#include <vector>

namespace moran {

// Probability of reaching state m+1 before state 0, starting from state 1,
// in a birth-death chain on {0, ..., m+1} whose up:down odds at interior
// state k are lambda[k-1] : 1 (all odds > 0).  Closed form:
//
//   p1 = 1 / (1 + sum_{k=1..m} prod_{j=1..k} 1/lambda_j)
//
// Once the running product drops below 1e-300 the remaining tail is
// truncated: it cannot move the result at double precision.  If the sum
// overflows to infinity the result is 0.
double birth_death_fixation(const std::vector<double>& lambda);

enum class EndRule { absorb, reflect };

// Tridiagonal absorbing Markov chain.  Interior states are 0..m-1; from
// state i the chain moves up (to i+1) with probability up[i], down (to i-1)
// with down[i], or leaves immediately to a success or failure absorber with
// out_success[i] / out_failure[i].  At the top state "up" either absorbs to
// success (EndRule::absorb) or stays put (reflect); symmetrically "down" at
// the bottom state absorbs to failure or stays put.
struct TridiagonalAbsorbingChain {
  std::vector<double> up, down, out_success, out_failure;
  EndRule bottom = EndRule::absorb;
  EndRule top = EndRule::absorb;

  std::size_t size() const { return up.size(); }

  // Checks matching sizes, non-negative entries, and unit row sums
  // (tolerance 1e-12).  Throws ConstraintError on violation.
  void validate() const;
};

// Probability of ending in the success absorber, from every interior state.
// Thomas elimination on the tridiagonal linear system: O(m), exact up to
// rounding.  Throws DomainError if no absorber is reachable (singular
// system) and ConstraintError if the chain fails validation.
std::vector<double> absorption_probabilities(const TridiagonalAbsorbingChain& c);

// Max-norm violation of the chain's fixed-point equations by a candidate
// solution (diagnostic for tests).
double chain_residual(const TridiagonalAbsorbingChain& c,
                      const std::vector<double>& values);

}  // namespace moran
