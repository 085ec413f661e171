#include "moran/chains.hpp"

#include <cmath>
#include <string>

#include "moran/errors.hpp"

namespace moran {

double birth_death_fixation(const std::vector<double>& lambda) {
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if (!(lambda[k] > 0.0)) {
      throw DomainError("birth-death odds must be positive; lambda[" +
                        std::to_string(k) + "] = " + std::to_string(lambda[k]));
    }
  }
  double sum = 1.0;
  double product = 1.0;
  for (double lk : lambda) {
    product /= lk;
    if (product < 1e-300) break;  // tail cannot affect the result
    sum += product;
    if (std::isinf(sum)) return 0.0;
  }
  return 1.0 / sum;
}

void TridiagonalAbsorbingChain::validate() const {
  const std::size_t m = up.size();
  if (m == 0) throw ConstraintError("chain has no interior states");
  if (down.size() != m || out_success.size() != m || out_failure.size() != m) {
    throw ConstraintError("chain probability arrays have mismatched sizes");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (up[i] < 0 || down[i] < 0 || out_success[i] < 0 || out_failure[i] < 0) {
      throw ConstraintError("chain has a negative probability at state " +
                            std::to_string(i));
    }
    const double row = up[i] + down[i] + out_success[i] + out_failure[i];
    if (std::fabs(row - 1.0) > 1e-12) {
      throw ConstraintError("chain row " + std::to_string(i) +
                            " sums to " + std::to_string(row) + ", not 1");
    }
  }
}

std::vector<double> absorption_probabilities(const TridiagonalAbsorbingChain& c) {
  c.validate();
  const std::size_t m = c.size();

  // Fixed-point equations: v_i = up_i * next + down_i * prev + out_success_i,
  // where next is v_{i+1} (or 1 / v_i at an absorbing / reflecting top) and
  // prev is v_{i-1} (or 0 / v_i at the bottom).  Rewritten as the tridiagonal
  // system a_i v_{i-1} + b_i v_i + c_i v_{i+1} = d_i.
  std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), rhs(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    sub[i] = (i > 0) ? -c.down[i] : 0.0;
    sup[i] = (i + 1 < m) ? -c.up[i] : 0.0;
    diag[i] = 1.0;
    rhs[i] = c.out_success[i];
    if (i == 0 && c.bottom == EndRule::reflect) diag[i] -= c.down[i];
    if (i + 1 == m) {
      if (c.top == EndRule::absorb) {
        rhs[i] += c.up[i];
      } else {
        diag[i] -= c.up[i];
      }
    }
  }

  // Thomas elimination.
  std::vector<double> cp(m, 0.0), dp(m, 0.0);
  double pivot = diag[0];
  if (std::fabs(pivot) < 1e-14) {
    throw DomainError("chain cannot reach an absorbing outcome (singular system)");
  }
  cp[0] = sup[0] / pivot;
  dp[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < m; ++i) {
    pivot = diag[i] - sub[i] * cp[i - 1];
    if (std::fabs(pivot) < 1e-14) {
      throw DomainError("chain cannot reach an absorbing outcome (singular system)");
    }
    cp[i] = sup[i] / pivot;
    dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / pivot;
  }
  std::vector<double> v(m, 0.0);
  v[m - 1] = dp[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) v[i] = dp[i] - cp[i] * v[i + 1];
  return v;
}

double chain_residual(const TridiagonalAbsorbingChain& c,
                      const std::vector<double>& values) {
  const std::size_t m = c.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double next;
    if (i + 1 < m) {
      next = values[i + 1];
    } else {
      next = (c.top == EndRule::absorb) ? 1.0 : values[i];
    }
    double prev;
    if (i > 0) {
      prev = values[i - 1];
    } else {
      prev = (c.bottom == EndRule::absorb) ? 0.0 : values[i];
    }
    const double rhs = c.up[i] * next + c.down[i] * prev + c.out_success[i];
    worst = std::max(worst, std::fabs(values[i] - rhs));
  }
  return worst;
}

}  // namespace moran
