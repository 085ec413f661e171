#include "moran/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "moran/errors.hpp"

namespace moran {

namespace {

void check_connected(const Graph& g, const char* what) {
  if (g.n < 1) throw GraphInvalidError(std::string(what) + " needs a non-empty graph");
  if (!is_connected(g)) {
    throw GraphInvalidError(std::string(what) + " requires a connected graph");
  }
}

void check_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.n) {
    throw ConstraintError("vertex " + std::to_string(v) + " outside 0.." +
                          std::to_string(g.n - 1));
  }
}

// Q_v = sum over neighbors x of v of 1/deg(x).
double heat_sum(const Graph& g, int v) {
  double q = 0.0;
  for (int x : g.adj[v]) q += 1.0 / g.degree(x);
  return q;
}

}  // namespace

double thermal_lower_bound(const Graph& g, double r, int v) {
  check_connected(g, "thermal lower bound");
  check_vertex(g, v);
  if (!(r > 1.0)) {
    throw DomainError("thermal lower bound needs r > 1, got r=" +
                      std::to_string(r));
  }
  int deg_min = g.n;
  for (int u = 0; u < g.n; ++u) deg_min = std::min(deg_min, g.degree(u));
  const double value =
      (r - 1.0) / (r + static_cast<double>(g.degree(v)) / deg_min);
  return std::clamp(value, 0.0, 1.0);
}

double isothermal_value(int n, double r) {
  if (n < 1) throw ConstraintError("isothermal value needs n >= 1");
  if (!(r > 0.0)) {
    throw DomainError("isothermal value needs r > 0, got r=" + std::to_string(r));
  }
  if (r == 1.0) return 1.0 / n;
  // (1 - 1/r) / (1 - 1/r^n) with care for underflow of (1/r)^n.
  const double inv = 1.0 / r;
  const double inv_pow = std::pow(inv, n);
  if (inv_pow == 0.0) return 1.0 - inv;  // r > 1, huge n
  const double denom = 1.0 - inv_pow;
  if (denom == 0.0) return 1.0 / n;  // r so close to 1 the power rounds to 1
  return (1.0 - inv) / denom;
}

double single_mutant_upper_bound(const Graph& g, double r, int v) {
  check_connected(g, "single-mutant upper bound");
  check_vertex(g, v);
  if (!(r > 0.0)) {
    throw DomainError("single-mutant upper bound needs r > 0, got r=" +
                      std::to_string(r));
  }
  return r / (r + heat_sum(g, v));
}

double pair_upper_bound(const Graph& g, double r) {
  check_connected(g, "pair upper bound");
  if (g.n < 2) throw ConstraintError("pair upper bound needs n >= 2");
  if (!(r > 0.0)) {
    throw DomainError("pair upper bound needs r > 0, got r=" + std::to_string(r));
  }
  double best = 0.0;
  for (int v = 0; v < g.n; ++v) {
    const double qv = heat_sum(g, v);
    for (int u : g.adj[v]) {
      const double quv =
          qv - 1.0 / g.degree(u) + heat_sum(g, u) - 1.0 / g.degree(v);
      best = std::max(best, 2.0 * r * r / (2.0 * r * r + qv * quv));
    }
  }
  return best;
}

const char* to_string(VertexTag t) {
  switch (t) {
    case VertexTag::amplifying:
      return "amplifying";
    case VertexTag::suppressing:
      return "suppressing";
    case VertexTag::neutral:
      return "neutral";
  }
  return "unknown";
}

VertexBoundReport classify_vertices(const Graph& g, double r,
                                    const ClassifyOptions& opt) {
  check_connected(g, "vertex classification");
  if (!(r > 1.0)) {
    throw DomainError("vertex classification needs r > 1, got r=" +
                      std::to_string(r));
  }

  VertexBoundReport report;
  report.n = g.n;
  report.r = r;
  report.exact_method = opt.use_exact;
  report.isothermal = isothermal_value(g.n, r);
  report.pair_ub = g.n >= 2 ? pair_upper_bound(g, r) : 1.0;
  report.c = opt.c;
  report.vertices.resize(g.n);

  std::vector<double> values(g.n), std_errs(g.n, 0.0);
  double residual = 0.0;
  if (opt.use_exact) {
    const FixationTable table = exact_fixation_all(g, r, opt.exact);
    residual = table.residual;
    for (int v = 0; v < g.n; ++v) values[v] = table.vertex(v);
  } else {
    SimParams params;
    params.r = r;
    params.runs = opt.mc_runs;
    params.seed = opt.seed;
    params.max_steps = opt.max_steps;
    params.threads = opt.threads;
    for (int v = 0; v < g.n; ++v) {
      const Estimate est = estimate_fixation(g, {v}, params);
      values[v] = est.p_hat;
      std_errs[v] = est.std_err;
    }
  }

  const double high_cut = 1.0 - opt.c / g.n;
  for (int v = 0; v < g.n; ++v) {
    VertexBounds& row = report.vertices[v];
    row.vertex = v;
    row.thermal_lb = thermal_lower_bound(g, r, v);
    row.single_mutant_ub = single_mutant_upper_bound(g, r, v);
    row.value = values[v];
    row.value_std_err = std_errs[v];
    // The 1e-12 floor absorbs iterative-solver error that the final-sweep
    // residual understates; any real amplification gap is far larger.
    const double eps =
        std::max({2.0 * residual, 4.0 * std_errs[v], 1e-12});
    report.epsilon = std::max(report.epsilon, eps);
    if (values[v] > report.isothermal + eps) {
      row.tag = VertexTag::amplifying;
    } else if (values[v] < report.isothermal - eps) {
      row.tag = VertexTag::suppressing;
    } else {
      row.tag = VertexTag::neutral;
    }
    if (values[v] > high_cut) ++report.count_above;
  }
  return report;
}

}  // namespace moran
