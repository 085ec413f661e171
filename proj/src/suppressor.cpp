#include "moran/suppressor.hpp"

#include <string>

#include "moran/chains.hpp"
#include "moran/errors.hpp"

namespace moran {

namespace {

int top_level(int n) { return (n + 1) / 2; }  // ceil(n/2)

void check_params(const CliqueChainParams& p, int min_n) {
  if (p.n < min_n) {
    throw ConstraintError("clique chain needs n >= " + std::to_string(min_n) +
                          ", got n=" + std::to_string(p.n));
  }
  if (p.phi < 2) {
    throw ConstraintError("clique chain needs phi >= 2, got phi=" +
                          std::to_string(p.phi));
  }
  if (!(p.r > 1.0)) {
    throw DomainError("clique chain needs fitness r > 1, got r=" +
                      std::to_string(p.r));
  }
}

}  // namespace

CliqueChainCoefficients clique_chain_coefficients(const CliqueChainParams& p,
                                                  int k) {
  check_params(p, 2);
  const int K = top_level(p.n);
  if (k < 1 || k > K - 1) {
    throw ConstraintError("level k=" + std::to_string(k) +
                          " outside the interior range 1.." + std::to_string(K - 1));
  }
  const double n = p.n;
  const double phi = p.phi;
  const double deg = n + phi * phi - 1.0;
  const double a = p.r * k * (n - k) / deg;
  const double b = k * (phi + (n - k) / deg);
  const double c = p.r * k * phi * phi / deg;
  const double sigma = a + b + c;
  return {a / sigma, b / sigma, c / sigma};
}

std::vector<double> clique_chain_values(const CliqueChainParams& p) {
  check_params(p, 2);
  const int K = top_level(p.n);
  std::vector<double> values(K + 1);
  values[0] = 0.0;
  values[K] = 1.0;
  if (K < 2) return values;

  TridiagonalAbsorbingChain chain;
  const int m = K - 1;  // interior levels 1..K-1
  chain.up.resize(m);
  chain.down.resize(m);
  chain.out_success.resize(m);
  chain.out_failure.assign(m, 0.0);
  chain.bottom = EndRule::absorb;  // down from k=1 lands in S_0 = failure
  chain.top = EndRule::absorb;     // up from k=K-1 lands in S_K = success
  for (int k = 1; k <= m; ++k) {
    const CliqueChainCoefficients c = clique_chain_coefficients(p, k);
    chain.up[k - 1] = c.alpha;
    chain.down[k - 1] = c.beta;
    chain.out_success[k - 1] = c.gamma;
  }
  const std::vector<double> interior = absorption_probabilities(chain);
  for (int k = 1; k <= m; ++k) values[k] = interior[k - 1];
  return values;
}

const char* to_string(SuppressorVerdict v) {
  switch (v) {
    case SuppressorVerdict::pass:
      return "pass";
    case SuppressorVerdict::fail:
      return "fail";
    case SuppressorVerdict::not_in_regime:
      return "not-in-regime";
  }
  return "unknown";
}

SuppressorReport suppressor_bound_check(int n, int phi, double r) {
  const CliqueChainParams params{n, phi, r};
  check_params(params, 3);
  SuppressorReport report;
  report.n = n;
  report.phi = phi;
  report.r = r;
  report.chain_value = clique_chain_values(params)[1];
  report.bound = 5.0 * r * phi / n;
  report.margin = report.bound - report.chain_value;
  report.in_regime = r <= phi / 2.0;
  if (!report.in_regime) {
    report.verdict = SuppressorVerdict::not_in_regime;
  } else if (report.chain_value < report.bound) {
    report.verdict = SuppressorVerdict::pass;
  } else {
    report.verdict = SuppressorVerdict::fail;
  }
  return report;
}

}  // namespace moran
