#include "moran/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "moran/errors.hpp"

namespace moran {

namespace {

void check_inputs(const Graph& g, double r, const ExactOptions& opt,
                  const char* what) {
  if (!(r > 0.0)) {
    throw DomainError(std::string(what) + " needs fitness r > 0, got r=" +
                      std::to_string(r));
  }
  if (g.n > opt.size_cap) {
    throw SizeCapError(std::string(what) + " is capped at n=" +
                       std::to_string(opt.size_cap) + " vertices (2^n state table); got n=" +
                       std::to_string(g.n) + ".  Use the Monte Carlo estimator instead.");
  }
  if (!is_connected(g)) {
    throw GraphInvalidError(std::string(what) + " requires a connected graph");
  }
}

// Masks 0..2^n-1 ordered by population count (ascending), ties by value.
std::vector<std::uint32_t> popcount_order(int n) {
  std::vector<std::uint32_t> order(std::size_t{1} << n);
  for (std::uint32_t s = 0; s < order.size(); ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(),
                   [](std::uint32_t a, std::uint32_t b) {
                     return std::popcount(a) < std::popcount(b);
                   });
  return order;
}

}  // namespace

double FixationTable::graph_mean() const {
  double sum = 0.0;
  for (int v = 0; v < n; ++v) sum += vertex(v);
  return sum / n;
}

FixationTable exact_fixation_all(const Graph& g, double r,
                                 const ExactOptions& opt) {
  check_inputs(g, r, opt, "exact fixation solver");
  const int n = g.n;
  const std::uint32_t full = (n == 32) ? ~0u : ((std::uint32_t{1} << n) - 1);

  std::vector<double> inv_deg(n), r_over_deg(n);
  for (int v = 0; v < n; ++v) {
    inv_deg[v] = 1.0 / g.degree(v);
    r_over_deg[v] = r * inv_deg[v];
  }

  FixationTable table;
  table.n = n;
  table.r = r;
  table.values.assign(std::size_t{1} << n, 0.0);
  table.values[full] = 1.0;
  auto& f = table.values;

  const auto order = popcount_order(n);

  auto update = [&](std::uint32_t s) {
    double num = 0.0, den = 0.0;
    std::uint32_t bits = s;
    while (bits != 0) {
      const int x = std::countr_zero(bits);
      bits &= bits - 1;
      const std::uint32_t without_x = s & ~(std::uint32_t{1} << x);
      for (int y : g.adj[x]) {
        if (s & (std::uint32_t{1} << y)) continue;
        num += r_over_deg[x] * f[s | (std::uint32_t{1} << y)] +
               inv_deg[y] * f[without_x];
        den += r_over_deg[x] + inv_deg[y];
      }
    }
    return num / den;  // den > 0: connected graph, S proper and non-empty
  };

  long sweep = 0;
  for (; sweep < opt.max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::uint32_t s : order) {
      if (s == 0 || s == full) continue;
      const double next = update(s);
      change = std::max(change, std::fabs(next - f[s]));
      f[s] = next;
    }
    if (change <= opt.tol) break;
  }
  table.sweeps = sweep + 1;
  if (sweep >= opt.max_sweeps) {
    throw ConvergenceError("exact fixation solver did not converge within " +
                           std::to_string(opt.max_sweeps) + " sweeps");
  }

  double residual = 0.0;
  for (std::uint32_t s : order) {
    if (s == 0 || s == full) continue;
    residual = std::max(residual, std::fabs(update(s) - f[s]));
  }
  table.residual = residual;
  return table;
}

double fixation_of_vertex(const Graph& g, double r, int v) {
  if (v < 0 || v >= g.n) {
    throw ConstraintError("vertex " + std::to_string(v) + " outside 0.." +
                          std::to_string(g.n - 1));
  }
  return exact_fixation_all(g, r).vertex(v);
}

double fixation_of_graph(const Graph& g, double r) {
  return exact_fixation_all(g, r).graph_mean();
}

namespace {

void check_l0_inputs(const Graph& g, double r, const std::vector<double>& d,
                     const ExactOptions& opt) {
  if (!(r > 1.0)) {
    throw DomainError("weighted pair system needs r > 1, got r=" +
                      std::to_string(r));
  }
  check_inputs(g, r, opt, "weighted pair system");
  if (static_cast<int>(d.size()) != g.n) {
    throw ConstraintError("weight vector has " + std::to_string(d.size()) +
                          " entries for a graph with " + std::to_string(g.n) +
                          " vertices");
  }
  for (int v = 0; v < g.n; ++v) {
    if (!(d[v] > 0.0)) {
      throw ConstraintError("weights must be positive; d[" + std::to_string(v) +
                            "] = " + std::to_string(d[v]));
    }
  }
}

}  // namespace

L0Result solve_L0_min_pair(const Graph& g, double r,
                           const std::vector<double>& d,
                           const ExactOptions& opt) {
  check_l0_inputs(g, r, d, opt);
  const int n = g.n;
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;

  L0Result res;
  res.n = n;
  res.r = r;
  res.values.assign(std::size_t{1} << n, 0.0);
  res.values[full] = 1.0;
  auto& p = res.values;

  const auto order = popcount_order(n);

  // One-pair value: p(S) candidate through boundary pair (x, y).
  auto pair_value = [&](std::uint32_t s, int x, int y) {
    const double a = r * d[x];
    const double b = d[y];
    return (a * p[s | (std::uint32_t{1} << y)] +
            b * p[s & ~(std::uint32_t{1} << x)]) /
           (a + b);
  };

  auto best = [&](std::uint32_t s) {
    double m = 2.0;
    std::uint32_t bits = s;
    while (bits != 0) {
      const int x = std::countr_zero(bits);
      bits &= bits - 1;
      for (int y : g.adj[x]) {
        if (s & (std::uint32_t{1} << y)) continue;
        m = std::min(m, pair_value(s, x, y));
      }
    }
    return m;  // connected graph: every proper non-empty S has a boundary pair
  };

  // Monotone value iteration from the all-zero interior: converges upward to
  // the least fixed point of the min-over-pairs operator.
  long sweep = 0;
  for (; sweep < opt.max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::uint32_t s : order) {
      if (s == 0 || s == full) continue;
      const double next = best(s);
      change = std::max(change, std::fabs(next - p[s]));
      p[s] = next;
    }
    if (change <= opt.tol) break;
  }
  res.sweeps = sweep + 1;
  if (sweep >= opt.max_sweeps) {
    throw ConvergenceError("weighted pair system did not converge within " +
                           std::to_string(opt.max_sweeps) + " sweeps");
  }
  double residual = 0.0;
  for (std::uint32_t s : order) {
    if (s == 0 || s == full) continue;
    residual = std::max(residual, std::fabs(best(s) - p[s]));
  }
  res.residual = residual;
  return res;
}

L0Result solve_L0_given_pairs(const Graph& g, double r,
                              const std::vector<double>& d,
                              const PairSelector& select,
                              const ExactOptions& opt) {
  check_l0_inputs(g, r, d, opt);
  if (!select) throw ConstraintError("pair selector is empty");
  const int n = g.n;
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;

  // Freeze and validate the selector on every interior configuration.
  std::vector<std::pair<int, int>> pick(std::size_t{1} << n, {-1, -1});
  for (std::uint32_t s = 1; s < full; ++s) {
    const auto [x, y] = select(s);
    const bool x_in = x >= 0 && x < n && (s & (std::uint32_t{1} << x));
    const bool y_out = y >= 0 && y < n && !(s & (std::uint32_t{1} << y));
    if (!x_in || !y_out || !g.has_edge(x, y)) {
      throw ConstraintError("pair selector returned (" + std::to_string(x) +
                            ", " + std::to_string(y) +
                            "), not a boundary edge of configuration " +
                            std::to_string(s));
    }
    pick[s] = {x, y};
  }

  L0Result res;
  res.n = n;
  res.r = r;
  res.values.assign(std::size_t{1} << n, 0.0);
  res.values[full] = 1.0;
  auto& p = res.values;

  const auto order = popcount_order(n);
  auto pair_value = [&](std::uint32_t s) {
    const auto [x, y] = pick[s];
    const double a = r * d[x];
    const double b = d[y];
    return (a * p[s | (std::uint32_t{1} << y)] +
            b * p[s & ~(std::uint32_t{1} << x)]) /
           (a + b);
  };

  long sweep = 0;
  for (; sweep < opt.max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::uint32_t s : order) {
      if (s == 0 || s == full) continue;
      const double next = pair_value(s);
      change = std::max(change, std::fabs(next - p[s]));
      p[s] = next;
    }
    if (change <= opt.tol) break;
  }
  res.sweeps = sweep + 1;
  if (sweep >= opt.max_sweeps) {
    throw ConvergenceError("weighted pair system did not converge within " +
                           std::to_string(opt.max_sweeps) + " sweeps");
  }
  double residual = 0.0;
  for (std::uint32_t s : order) {
    if (s == 0 || s == full) continue;
    residual = std::max(residual, std::fabs(pair_value(s) - p[s]));
  }
  res.residual = residual;
  return res;
}

}  // namespace moran
