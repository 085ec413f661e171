#include "moran/urchin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "moran/chains.hpp"
#include "moran/errors.hpp"

namespace moran {

namespace {

void check_level_args(int n, double r, int k) {
  if (n < 2) throw ConstraintError("level chains need n >= 2, got n=" + std::to_string(n));
  if (!(r > 1.0)) {
    throw DomainError("level chains need fitness r > 1, got r=" + std::to_string(r));
  }
  if (k < 1 || k > n - 1) {
    throw ConstraintError("level k=" + std::to_string(k) + " outside 1.." +
                          std::to_string(n - 1));
  }
}

// Reusable Thomas-elimination scratch for the level chains.
struct LevelWorkspace {
  std::vector<double> cp, dp, vals;
  void ensure(std::size_t m) {
    if (cp.size() < m) {
      cp.resize(m);
      dp.resize(m);
      vals.resize(m);
    }
  }
};

// Solves the climb chain of level k into ws.vals[0..k].
// State i (mutant clique count, all noses pessimistically intact):
//   up weight    A_i = r((k-i)n + i(n-i))   -> i+1 (success from i = k)
//   down weight  B_i = i(n-i)               -> i-1
//   fail weight  C_i = k-i                  -> absorb to failure
void solve_h_into(int n, double r, int k, LevelWorkspace& ws) {
  const int m = k + 1;
  ws.ensure(static_cast<std::size_t>(n) + 1);
  const double dn = n;
  double prev_cp = 0.0, prev_dp = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double a = r * ((k - i) * dn + static_cast<double>(i) * (n - i));
    const double b = static_cast<double>(i) * (n - i);
    const double c = k - i;
    const double sigma = a + b + c;
    const double rhs = (i == k) ? a : 0.0;
    const double pivot = sigma - b * prev_cp;
    prev_cp = ((i == k) ? 0.0 : a) / pivot;
    prev_dp = (rhs + b * prev_dp) / pivot;
    ws.cp[i] = prev_cp;
    ws.dp[i] = prev_dp;
  }
  ws.vals[k] = ws.dp[k];
  for (int i = k - 1; i >= 0; --i) ws.vals[i] = ws.dp[i] + ws.cp[i] * ws.vals[i + 1];
  (void)m;
}

// Solves the spread chain of level k into ws.vals[0..n-k], where slot j is
// the state with mutant clique count i = k + j and all k noses covered.
//   j = 0:      moves up with probability h_kk, otherwise fails
//   j >= 1:     up weight      A = r i(n-i)
//               down weight    B = (i-k)n + i(n-i)
//               success weight C = r(i-k)   (a nose of an isolated clique
//                                            vertex gets converted)
void solve_s_into(int n, double r, int k, double h_kk, LevelWorkspace& ws) {
  ws.ensure(static_cast<std::size_t>(n) + 1);
  const int top = n - k;
  const double dn = n;
  // j = 0 row: v_0 - h_kk v_1 = 0.
  double prev_cp = h_kk;
  double prev_dp = 0.0;
  ws.cp[0] = prev_cp;
  ws.dp[0] = prev_dp;
  for (int j = 1; j <= top; ++j) {
    const int i = k + j;
    const double a = r * static_cast<double>(i) * (n - i);
    const double b = static_cast<double>(j) * dn + static_cast<double>(i) * (n - i);
    const double c = r * static_cast<double>(j);
    const double sigma = a + b + c;
    const double pivot = sigma - b * prev_cp;
    prev_cp = a / pivot;
    prev_dp = (c + b * prev_dp) / pivot;
    ws.cp[j] = prev_cp;
    ws.dp[j] = prev_dp;
  }
  ws.vals[top] = ws.dp[top];
  for (int j = top - 1; j >= 0; --j) ws.vals[j] = ws.dp[j] + ws.cp[j] * ws.vals[j + 1];
}

LevelSummary summarize_level(int n, double r, int k, LevelWorkspace& ws) {
  LevelSummary out;
  out.k = k;
  solve_h_into(n, r, k, ws);
  out.h0 = ws.vals[0];
  out.hk = ws.vals[k];
  solve_s_into(n, r, k, out.hk, ws);
  out.sk = ws.vals[0];
  const double product = out.h0 * out.sk;
  if (product >= 1.0) {
    out.saturated = true;
    out.lambda = 1e300;
  } else {
    out.lambda = product / (1.0 - product);
  }
  return out;
}

}  // namespace

std::vector<double> h_values(int n, double r, int k) {
  check_level_args(n, r, k);
  LevelWorkspace ws;
  solve_h_into(n, r, k, ws);
  return std::vector<double>(ws.vals.begin(), ws.vals.begin() + k + 1);
}

std::vector<double> s_values(int n, double r, int k, double h_kk) {
  check_level_args(n, r, k);
  if (!(h_kk > 0.0) || h_kk > 1.0) {
    throw DomainError("spread chain needs h_kk in (0, 1], got " +
                      std::to_string(h_kk));
  }
  LevelWorkspace ws;
  solve_s_into(n, r, k, h_kk, ws);
  return std::vector<double>(ws.vals.begin(), ws.vals.begin() + (n - k) + 1);
}

std::vector<LevelSummary> lambda_sweep(int n, double r, int threads) {
  check_level_args(n, r, 1);
  if (threads < 1) throw ConstraintError("threads must be >= 1");
  std::vector<LevelSummary> out(n - 1);
  if (threads == 1) {
    LevelWorkspace ws;
    for (int k = 1; k <= n - 1; ++k) out[k - 1] = summarize_level(n, r, k, ws);
    return out;
  }
  const int workers = std::min(threads, n - 1);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      LevelWorkspace ws;
      for (int k = 1 + t; k <= n - 1; k += workers) {
        out[k - 1] = summarize_level(n, r, k, ws);
      }
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

double nose_lower_bound(const std::vector<LevelSummary>& sweep) {
  std::vector<double> lambdas;
  lambdas.reserve(sweep.size());
  for (const auto& level : sweep) lambdas.push_back(level.lambda);
  return birth_death_fixation(lambdas);
}

double nose_lower_bound(int n, double r) {
  return nose_lower_bound(lambda_sweep(n, r));
}

double amplifier_constant(double r) {
  if (!(r > 5.0)) {
    throw DomainError("amplifier constant needs r > 5, got r=" + std::to_string(r));
  }
  return 3.0 + (259.0 * r - 15.0) / ((r - 2.0) * (r - 5.0));
}

namespace {

// Transition weights out of lumped class (k, i, x), scaled by n.  m is the
// mutant clique count i + k - x.
struct ClassWeights {
  double cover;    // (k, i, x-1)
  double expand;   // (k, i+1, x)
  double retreat;  // (k, i-1, x)
  double uncover;  // (k, i, x+1)
  double up;       // (k+1, i-1, x)
  double down;     // (k-1, i, x-1)
  double total() const { return cover + expand + retreat + uncover + up + down; }
};

ClassWeights class_weights(int n, double r, int k, int i, int x) {
  const double m = i + k - x;
  ClassWeights w;
  w.cover = r * x * (n + m);
  w.expand = r * m * (n - k - i);
  w.retreat = i * (2.0 * n - m);
  w.uncover = (k - x) * (n - m);
  w.up = r * i;
  w.down = x;
  return w;
}

struct LevelTable {
  std::vector<double> q;  // [i * (k+1) + x]
  double residual = 0.0;
  long sweeps = 0;
};

// Gauss-Seidel (alternating sweep direction) for the within-level chain:
// success = reach level k+1, failure = reach level k-1.
LevelTable solve_level_table(int n, double r, int k) {
  const int rows = n - k + 1;  // i
  const int cols = k + 1;      // x
  LevelTable table;
  table.q.assign(static_cast<std::size_t>(rows) * cols, 0.0);
  auto& q = table.q;
  auto at = [cols](int i, int x) { return static_cast<std::size_t>(i) * cols + x; };

  auto value = [&](int i, int x) {
    const ClassWeights w = class_weights(n, r, k, i, x);
    double num = w.up;  // success contributes 1, failure 0
    if (w.cover > 0) num += w.cover * q[at(i, x - 1)];
    if (w.expand > 0) num += w.expand * q[at(i + 1, x)];
    if (w.retreat > 0) num += w.retreat * q[at(i - 1, x)];
    if (w.uncover > 0) num += w.uncover * q[at(i, x + 1)];
    return num / w.total();
  };

  const long cap = 1000000;
  const double tol = 1e-13;
  long sweep = 0;
  for (; sweep < cap; ++sweep) {
    double change = 0.0;
    if (sweep % 2 == 0) {
      for (int i = 0; i < rows; ++i)
        for (int x = 0; x < cols; ++x) {
          const double next = value(i, x);
          change = std::max(change, std::fabs(next - q[at(i, x)]));
          q[at(i, x)] = next;
        }
    } else {
      for (int i = rows - 1; i >= 0; --i)
        for (int x = cols - 1; x >= 0; --x) {
          const double next = value(i, x);
          change = std::max(change, std::fabs(next - q[at(i, x)]));
          q[at(i, x)] = next;
        }
    }
    if (change <= tol) break;
  }
  table.sweeps = sweep + 1;
  if (sweep >= cap) {
    throw ConvergenceError("within-level solve did not converge at level " +
                           std::to_string(k));
  }
  double residual = 0.0;
  for (int i = 0; i < rows; ++i)
    for (int x = 0; x < cols; ++x)
      residual = std::max(residual, std::fabs(value(i, x) - q[at(i, x)]));
  if (residual > 1e-12) {
    throw ConvergenceError("within-level solve stalled with residual " +
                           std::to_string(residual));
  }
  table.residual = residual;
  return table;
}

void check_lumped_args(int n, double r, int cap, const char* what) {
  if (n < 2) {
    throw ConstraintError(std::string(what) + " needs n >= 2, got n=" +
                          std::to_string(n));
  }
  if (n > cap) {
    throw SizeCapError(std::string(what) + " is capped at n=" +
                       std::to_string(cap) + ", got n=" + std::to_string(n));
  }
  if (!(r > 0.0)) {
    throw DomainError(std::string(what) + " needs fitness r > 0, got r=" +
                      std::to_string(r));
  }
}

}  // namespace

std::vector<double> q_exact_level(int n, double r, int k) {
  check_lumped_args(n, r, 200, "within-level solver");
  if (k < 1 || k > n - 1) {
    throw ConstraintError("level k=" + std::to_string(k) + " outside 1.." +
                          std::to_string(n - 1));
  }
  return solve_level_table(n, r, k).q;
}

LumpedFixation urchin_exact_fixation_all(int n, double r) {
  check_lumped_args(n, r, 60, "lumped fixation solver");

  LumpedFixation fix;
  fix.n = n;
  fix.r = r;
  fix.levels.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    fix.levels[k].assign(static_cast<std::size_t>(n - k + 1) * (k + 1), 0.0);
  }
  auto& f = fix.levels;
  auto at = [](int k, int i, int x) {
    return static_cast<std::size_t>(i) * (k + 1) + x;
  };
  f[n][at(n, 0, 0)] = 1.0;  // every vertex mutant

  auto value = [&](int k, int i, int x) {
    const ClassWeights w = class_weights(n, r, k, i, x);
    double num = 0.0;
    if (w.cover > 0) num += w.cover * f[k][at(k, i, x - 1)];
    if (w.expand > 0) num += w.expand * f[k][at(k, i + 1, x)];
    if (w.retreat > 0) num += w.retreat * f[k][at(k, i - 1, x)];
    if (w.uncover > 0) num += w.uncover * f[k][at(k, i, x + 1)];
    if (w.up > 0) num += w.up * f[k + 1][at(k + 1, i - 1, x)];
    if (w.down > 0) num += w.down * f[k - 1][at(k - 1, i, x - 1)];
    return num / w.total();
  };
  auto is_fixed = [&](int k, int i, int x) {
    return (k == 0 && i == 0 && x == 0) || (k == n && i == 0 && x == 0);
  };

  const long cap = 1000000;
  const double tol = 1e-13;
  long sweep = 0;
  for (; sweep < cap; ++sweep) {
    double change = 0.0;
    auto relax = [&](int k, int i, int x) {
      if (is_fixed(k, i, x)) return;
      const double next = value(k, i, x);
      change = std::max(change, std::fabs(next - f[k][at(k, i, x)]));
      f[k][at(k, i, x)] = next;
    };
    if (sweep % 2 == 0) {
      for (int k = 0; k <= n; ++k)
        for (int i = 0; i <= n - k; ++i)
          for (int x = 0; x <= k; ++x) relax(k, i, x);
    } else {
      for (int k = n; k >= 0; --k)
        for (int i = n - k; i >= 0; --i)
          for (int x = k; x >= 0; --x) relax(k, i, x);
    }
    if (change <= tol) break;
  }
  fix.sweeps = sweep + 1;
  if (sweep >= cap) {
    throw ConvergenceError("lumped fixation solve did not converge for n=" +
                           std::to_string(n));
  }
  double residual = 0.0;
  for (int k = 0; k <= n; ++k)
    for (int i = 0; i <= n - k; ++i)
      for (int x = 0; x <= k; ++x) {
        if (is_fixed(k, i, x)) continue;
        residual = std::max(residual,
                            std::fabs(value(k, i, x) - f[k][at(k, i, x)]));
      }
  if (residual > 1e-12) {
    throw ConvergenceError("lumped fixation solve stalled with residual " +
                           std::to_string(residual));
  }
  fix.residual = residual;
  return fix;
}

double urchin_exact_fixation(int n, double r, const LumpedState& start) {
  if (start.k < 0 || start.k > n || start.i < 0 || start.i > n - start.k ||
      start.x < 0 || start.x > start.k) {
    throw ConstraintError("lumped class (k=" + std::to_string(start.k) +
                          ", i=" + std::to_string(start.i) + ", x=" +
                          std::to_string(start.x) + ") is not valid for n=" +
                          std::to_string(n));
  }
  const LumpedFixation fix = urchin_exact_fixation_all(n, r);
  return fix.levels[start.k][static_cast<std::size_t>(start.i) * (start.k + 1) +
                             start.x];
}

DominationReport verify_domination(int n, double r) {
  check_lumped_args(n, r, 40, "domination check");
  if (!(r > 1.0)) {
    throw DomainError("domination check needs r > 1, got r=" + std::to_string(r));
  }

  DominationReport report;
  report.min_pair_margin = 1.0;
  report.min_collapse_margin = 1.0;
  for (int k = 1; k <= n - 1; ++k) {
    const LevelTable table = solve_level_table(n, r, k);
    const int cols = k + 1;
    auto q = [&](int i, int x) {
      return table.q[static_cast<std::size_t>(i) * cols + x];
    };
    for (int i = 1; i <= n - k; ++i) {
      for (int x = 1; x <= k; ++x) {
        report.min_pair_margin =
            std::min(report.min_pair_margin, q(i, x) - q(i - 1, x - 1));
        // Collapsed one-dimensional state with the same mutant clique count
        // k + i - x: every mutant nose covered when i >= x, otherwise no
        // isolated clique vertices and x - i isolated noses.
        const double p = (i >= x) ? q(i - x, 0) : q(0, x - i);
        report.min_collapse_margin =
            std::min(report.min_collapse_margin, q(i, x) - p);
      }
    }
    report.max_residual = std::max(report.max_residual, table.residual);
    ++report.levels_checked;
  }
  report.ok = report.min_pair_margin > 0.0 && report.min_collapse_margin > 0.0;
  return report;
}

}  // namespace moran
