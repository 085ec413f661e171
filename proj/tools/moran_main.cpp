// Command-line surface for the Moran-process toolkit.  Every JSON-emitting
// subcommand prints one envelope object to stdout:
//   { command, parameters, payload, version, wall_time_ms }
// wall_time_ms is the only field allowed to vary between identical
// invocations; everything else is bit-reproducible given the same flags.
// Probabilities are rounded to 12 significant digits before serialization.
//
// Exit codes: 0 ok; 2 input constraint (including flag parse errors);
// 3 size cap exceeded; 4 invalid graph; 5 parameter outside a formula's
// domain; 1 unexpected internal failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moran/bounds.hpp"
#include "moran/errors.hpp"
#include "moran/exact.hpp"
#include "moran/graph.hpp"
#include "moran/simulate.hpp"
#include "moran/suppressor.hpp"
#include "moran/urchin.hpp"

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr const char* kVersion = "1.0.0";

// Rounds through a 12-significant-digit decimal representation so that JSON
// payloads are stable decimal strings.
double round_sig(double x, int digits = 12) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

std::string format_sig(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw moran::ConstraintError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw moran::ConstraintError("failed writing '" + path + "'");
}

// Prints the envelope to stdout and optionally mirrors it to a file.
int emit(const std::string& command, const json& parameters, const json& payload,
         Clock::time_point t0, const std::string& out_path) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      Clock::now() - t0)
                      .count();
  json envelope;
  envelope["command"] = command;
  envelope["parameters"] = parameters;
  envelope["payload"] = payload;
  envelope["version"] = kVersion;
  envelope["wall_time_ms"] = ms;
  const std::string text = envelope.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_text_file(out_path, text);
  return 0;
}

json estimate_json(const moran::Estimate& e) {
  return json{{"runs_requested", e.runs_requested},
              {"runs_completed", e.runs_completed},
              {"fixations", e.fixations},
              {"timeouts", e.timeouts},
              {"p_hat", round_sig(e.p_hat)},
              {"std_err", round_sig(e.std_err)},
              {"ci_low", round_sig(e.ci_low)},
              {"ci_high", round_sig(e.ci_high)},
              {"mean_steps", round_sig(e.mean_steps)}};
}

struct GenArgs {
  std::string family;
  int n = 0;
  int phi = 0;
  bool phi_set = false;
  std::string out;
};

int run_gen(const GenArgs& a) {
  if (a.family == "phi-urchin") {
    if (!a.phi_set) {
      throw moran::ConstraintError("family phi-urchin requires --phi");
    }
  } else if (a.phi_set) {
    throw moran::ConstraintError("--phi is only valid for family phi-urchin");
  }
  moran::Graph g;
  if (a.family == "complete") {
    g = moran::make_complete(a.n);
  } else if (a.family == "cycle") {
    g = moran::make_cycle(a.n);
  } else if (a.family == "star") {
    g = moran::make_star(a.n);
  } else if (a.family == "path") {
    g = moran::make_path(a.n);
  } else if (a.family == "urchin") {
    g = moran::make_urchin(a.n);
  } else {
    g = moran::make_phi_urchin(a.n, a.phi);
  }
  const std::string text = moran::serialize_edge_list(g);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(a.out, text);
  }
  return 0;
}

struct ExactArgs {
  std::string graph_path;
  double r = 0;
  bool per_vertex = false;  // per-vertex values are always in the payload
  bool all_states = false;
  std::string csv;
  std::string out;
};

int run_exact(const ExactArgs& a, Clock::time_point t0) {
  if (a.all_states && a.csv.empty()) {
    throw moran::ConstraintError("--all-states requires --csv PATH");
  }
  const moran::Graph g = moran::load_edge_list(a.graph_path);
  const moran::FixationTable table = moran::exact_fixation_all(g, a.r);

  json per_vertex = json::array();
  for (int v = 0; v < g.n; ++v) per_vertex.push_back(round_sig(table.vertex(v)));
  json payload;
  payload["graph"] = round_sig(table.graph_mean());
  payload["residual"] = round_sig(table.residual);
  payload["sweeps"] = table.sweeps;
  payload["per_vertex"] = per_vertex;

  if (a.all_states) {
    std::ostringstream csv;
    csv << "mask,probability\n";
    for (std::size_t mask = 0; mask < table.values.size(); ++mask) {
      csv << mask << ',' << format_sig(table.values[mask]) << '\n';
    }
    write_text_file(a.csv, csv.str());
  }

  const json parameters{{"graph", a.graph_path},
                        {"r", a.r},
                        {"per_vertex", true},
                        {"all_states", a.all_states}};
  return emit("exact", parameters, payload, t0, a.out);
}

struct SimulateArgs {
  std::string graph_path;
  double r = 0;
  std::string start;
  long runs = 10000;
  std::uint64_t seed = 0;
  long long max_steps = 1000000000;
  int threads = 1;
  std::string out;
};

int run_simulate(const SimulateArgs& a, Clock::time_point t0) {
  const moran::Graph g = moran::load_edge_list(a.graph_path);
  moran::SimParams params;
  params.r = a.r;
  params.runs = a.runs;
  params.seed = a.seed;
  params.max_steps = a.max_steps;
  params.threads = a.threads;

  json payload;
  if (a.start == "random") {
    const moran::GraphEstimate ge = moran::estimate_graph_fixation(g, params);
    payload["graph"] = estimate_json(ge.graph);
    json per_vertex = json::array();
    for (const auto& est : ge.per_vertex) per_vertex.push_back(estimate_json(est));
    payload["per_vertex"] = per_vertex;
  } else {
    int v = -1;
    try {
      std::size_t used = 0;
      v = std::stoi(a.start, &used);
      if (used != a.start.size()) v = -1;
    } catch (const std::exception&) {
      v = -1;
    }
    if (v < 0 || v >= g.n) {
      throw moran::ConstraintError("--start must be a vertex id in 0.." +
                                   std::to_string(g.n - 1) + " or 'random', got '" +
                                   a.start + "'");
    }
    payload = estimate_json(moran::estimate_fixation(g, {v}, params));
    payload["start"] = v;
  }

  const json parameters{{"graph", a.graph_path}, {"r", a.r},
                        {"start", a.start},      {"runs", a.runs},
                        {"seed", a.seed},        {"max_steps", a.max_steps},
                        {"threads", a.threads}};
  return emit("simulate", parameters, payload, t0, a.out);
}

struct UrchinArgs {
  int n = 0;
  double r = 0;
  bool bounds = false;
  bool exact = false;
  std::string csv;
  int threads = 1;
  std::string out;
};

int run_urchin(const UrchinArgs& a, Clock::time_point t0) {
  const std::vector<moran::LevelSummary> sweep =
      moran::lambda_sweep(a.n, a.r, a.threads);
  const double p1 = moran::nose_lower_bound(sweep);

  json payload;
  payload["n"] = a.n;
  payload["levels"] = static_cast<int>(sweep.size());
  payload["p1"] = round_sig(p1);
  int saturated = 0;
  for (const auto& level : sweep) saturated += level.saturated ? 1 : 0;
  payload["saturated_levels"] = saturated;

  if (a.r > 5.0) {
    const double c = moran::amplifier_constant(a.r);
    const double floor = 1.0 - c / a.n;
    payload["c_r_check"] = json{{"c", round_sig(c)},
                                {"floor", round_sig(floor)},
                                {"pass", p1 >= floor}};
  } else {
    payload["c_r_check"] = nullptr;
  }

  if (a.n <= 40) {
    const moran::DominationReport dom = moran::verify_domination(a.n, a.r);
    payload["domination"] = json{
        {"ok", dom.ok},
        {"min_pair_margin", round_sig(dom.min_pair_margin)},
        {"min_collapse_margin", round_sig(dom.min_collapse_margin)},
        {"max_residual", round_sig(dom.max_residual)},
        {"levels_checked", dom.levels_checked}};
  } else {
    payload["domination"] = nullptr;
  }

  if (a.bounds) {
    // Worst margins of the per-level floor inequalities, each restricted to
    // the levels where its right-hand side is defined and non-negative.
    const double n = a.n;
    const double r = a.r;
    double hk_margin = 1.0, h0_margin = 1.0, sk_margin = 1.0, sk_min_margin = 1.0;
    bool any_sk = false;
    const double hk_floor = 1.0 - 2.0 / (n * (r - 1.0) + 1.0);
    for (const auto& level : sweep) {
      hk_margin = std::min(hk_margin, level.hk - hk_floor);
      const double h0_floor = 1.0 - (level.k + 2.0) / (n * (r - 1.0));
      if (h0_floor >= 0.0) h0_margin = std::min(h0_margin, level.h0 - h0_floor);
      if (r > 5.0) {
        const double sk_floor =
            1.0 - 64.0 * r / ((r - 5.0) * (r - 1.0)) * n /
                      ((n - level.k) * (n - level.k));
        if (sk_floor >= 0.0) {
          sk_margin = std::min(sk_margin, level.sk - sk_floor);
          any_sk = true;
        }
        if (r < n) sk_min_margin = std::min(sk_min_margin, level.sk - 1.0 / n);
      }
    }
    json checks;
    checks["hk_floor"] =
        json{{"pass", hk_margin >= 0.0}, {"min_margin", round_sig(hk_margin)}};
    checks["h0_floor"] =
        json{{"pass", h0_margin >= 0.0}, {"min_margin", round_sig(h0_margin)}};
    checks["sk_floor"] = any_sk ? json{{"pass", sk_margin >= 0.0},
                                       {"min_margin", round_sig(sk_margin)}}
                                : json(nullptr);
    checks["sk_min"] = (r > 5.0 && r < n)
                           ? json{{"pass", sk_min_margin >= 0.0},
                                  {"min_margin", round_sig(sk_min_margin)}}
                           : json(nullptr);
    payload["lemma_checks"] = checks;
  }

  if (a.exact) {
    const moran::LumpedFixation fix = moran::urchin_exact_fixation_all(a.n, a.r);
    const double nose = fix.levels[1][1];    // (k=1, i=0, x=1)
    const double clique = fix.levels[0][1];  // (k=0, i=1, x=0)
    payload["exact"] = json{{"nose", round_sig(nose)},
                            {"clique", round_sig(clique)},
                            {"residual", round_sig(fix.residual)}};
  }

  if (!a.csv.empty()) {
    std::ostringstream csv;
    csv << "k,h0,hk,sk,lambda,cum_inv_lambda\n";
    double cum_inv = 1.0;  // running product of 1/lambda_k; p1 = 1/(1 + sum)
    for (const auto& level : sweep) {
      cum_inv *= 1.0 / level.lambda;
      csv << level.k << ',' << format_sig(level.h0) << ',' << format_sig(level.hk)
          << ',' << format_sig(level.sk) << ',' << format_sig(level.lambda)
          << ',' << format_sig(cum_inv) << '\n';
    }
    write_text_file(a.csv, csv.str());
  }

  const json parameters{{"n", a.n},
                        {"r", a.r},
                        {"bounds", a.bounds},
                        {"exact", a.exact},
                        {"threads", a.threads}};
  return emit("urchin", parameters, payload, t0, a.out);
}

struct BoundsArgs {
  std::string graph_path;
  double r = 0;
  std::string method = "exact";
  long runs = 10000;
  std::uint64_t seed = 0;
  long long max_steps = 1000000000;
  int threads = 1;
  double c = 1.0;
  std::string csv;
  std::string out;
};

int run_bounds(const BoundsArgs& a, Clock::time_point t0) {
  const moran::Graph g = moran::load_edge_list(a.graph_path);
  moran::ClassifyOptions opt;
  opt.use_exact = a.method == "exact";
  opt.mc_runs = a.runs;
  opt.seed = a.seed;
  opt.max_steps = a.max_steps;
  opt.threads = a.threads;
  opt.c = a.c;
  const moran::VertexBoundReport report = moran::classify_vertices(g, a.r, opt);

  json vertices = json::array();
  for (const auto& row : report.vertices) {
    vertices.push_back(json{{"vertex", row.vertex},
                            {"thermal_lb", round_sig(row.thermal_lb)},
                            {"single_mutant_ub", round_sig(row.single_mutant_ub)},
                            {"value", round_sig(row.value)},
                            {"std_err", round_sig(row.value_std_err)},
                            {"tag", moran::to_string(row.tag)}});
  }
  json payload;
  payload["n"] = report.n;
  payload["method"] = a.method;
  payload["isothermal"] = round_sig(report.isothermal);
  payload["pair_ub"] = round_sig(report.pair_ub);
  payload["epsilon"] = round_sig(report.epsilon);
  payload["c"] = report.c;
  payload["count_above"] = report.count_above;
  payload["vertices"] = vertices;

  if (!a.csv.empty()) {
    std::ostringstream csv;
    csv << "vertex,thermal_lb,single_mutant_ub,value,std_err,tag\n";
    for (const auto& row : report.vertices) {
      csv << row.vertex << ',' << format_sig(row.thermal_lb) << ','
          << format_sig(row.single_mutant_ub) << ',' << format_sig(row.value)
          << ',' << format_sig(row.value_std_err) << ','
          << moran::to_string(row.tag) << '\n';
    }
    write_text_file(a.csv, csv.str());
  }

  const json parameters{{"graph", a.graph_path}, {"r", a.r},
                        {"method", a.method},    {"runs", a.runs},
                        {"seed", a.seed},        {"max_steps", a.max_steps},
                        {"threads", a.threads},  {"c", a.c}};
  return emit("bounds", parameters, payload, t0, a.out);
}

struct SuppressorArgs {
  int n = 0;
  int phi = 0;
  double r = 0;
  std::string csv;
  std::string out;
};

int run_suppressor(const SuppressorArgs& a, Clock::time_point t0) {
  const moran::SuppressorReport report =
      moran::suppressor_bound_check(a.n, a.phi, a.r);

  json payload;
  payload["n"] = report.n;
  payload["phi"] = report.phi;
  payload["chain_value"] = round_sig(report.chain_value);
  payload["bound"] = round_sig(report.bound);
  payload["margin"] = round_sig(report.margin);
  payload["in_regime"] = report.in_regime;
  payload["verdict"] = moran::to_string(report.verdict);

  if (!a.csv.empty()) {
    const std::vector<double> values =
        moran::clique_chain_values({a.n, a.phi, a.r});
    std::ostringstream csv;
    csv << "k,value\n";
    for (std::size_t k = 0; k < values.size(); ++k) {
      csv << k << ',' << format_sig(values[k]) << '\n';
    }
    write_text_file(a.csv, csv.str());
  }

  const json parameters{{"n", a.n}, {"phi", a.phi}, {"r", a.r}};
  return emit("suppressor", parameters, payload, t0, a.out);
}

}  // namespace

int main(int argc, char** argv) {
  const Clock::time_point t0 = Clock::now();

  CLI::App app{"Generalized Moran process toolkit: simulation, exact fixation "
               "probabilities, and bound verification on undirected graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "gen", "Write a benchmark-family graph as a canonical edge list");
  gen->add_option("family", gen_args.family, "graph family")
      ->required()
      ->check(CLI::IsMember(
          {"complete", "cycle", "star", "path", "urchin", "phi-urchin"}));
  gen->add_option("--n", gen_args.n, "size parameter")->required();
  CLI::Option* phi_opt =
      gen->add_option("--phi", gen_args.phi, "spokes per nose (phi-urchin)");
  gen->add_option("--out", gen_args.out, "output path (default: stdout)");

  ExactArgs exact_args;
  CLI::App* exact = app.add_subcommand(
      "exact", "Exact fixation probabilities from the full configuration system");
  exact->add_option("--graph", exact_args.graph_path, "edge-list file")->required();
  exact->add_option("--r", exact_args.r, "mutant fitness")->required();
  exact->add_flag("--per-vertex", exact_args.per_vertex,
                  "include per-vertex values in the payload (always on)");
  exact->add_flag("--all-states", exact_args.all_states,
                  "write every configuration's probability to --csv");
  exact->add_option("--csv", exact_args.csv, "CSV output path for --all-states");
  exact->add_option("--out", exact_args.out, "also write the JSON envelope here");

  SimulateArgs sim_args;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo fixation estimate");
  simulate->add_option("--graph", sim_args.graph_path, "edge-list file")->required();
  simulate->add_option("--r", sim_args.r, "mutant fitness")->required();
  simulate->add_option("--start", sim_args.start,
                       "starting vertex id, or 'random' for the uniform "
                       "single-mutant average")
      ->required();
  simulate->add_option("--runs", sim_args.runs, "number of runs");
  simulate->add_option("--seed", sim_args.seed, "PRNG seed");
  simulate->add_option("--max-steps", sim_args.max_steps,
                       "effective-step cap per run");
  simulate->add_option("--threads", sim_args.threads, "worker threads");
  simulate->add_option("--out", sim_args.out, "also write the JSON envelope here");

  UrchinArgs urchin_args;
  CLI::App* urchin = app.add_subcommand(
      "urchin", "Level-chain analysis of the clique-with-noses family");
  urchin->add_option("--n", urchin_args.n, "clique size (graph has 2n vertices)")
      ->required();
  urchin->add_option("--r", urchin_args.r, "mutant fitness")->required();
  urchin->add_flag("--bounds", urchin_args.bounds,
                   "check the per-level floor inequalities");
  urchin->add_flag("--exact", urchin_args.exact,
                   "solve the lumped process exactly (n <= 60)");
  urchin->add_option(
      "--csv", urchin_args.csv,
      "per-level table output path (k,h0,hk,sk,lambda,cum_inv_lambda)");
  urchin->add_option("--threads", urchin_args.threads, "worker threads");
  urchin->add_option("--out", urchin_args.out, "also write the JSON envelope here");

  BoundsArgs bounds_args;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Closed-form bounds and per-vertex classification");
  bounds->add_option("--graph", bounds_args.graph_path, "edge-list file")->required();
  bounds->add_option("--r", bounds_args.r, "mutant fitness")->required();
  bounds->add_option("--method", bounds_args.method, "value source")
      ->check(CLI::IsMember({"exact", "mc"}));
  bounds->add_option("--runs", bounds_args.runs, "Monte Carlo runs per vertex");
  bounds->add_option("--seed", bounds_args.seed, "PRNG seed");
  bounds->add_option("--max-steps", bounds_args.max_steps,
                     "effective-step cap per run");
  bounds->add_option("--threads", bounds_args.threads, "worker threads");
  bounds->add_option("--c", bounds_args.c,
                     "report how many vertices exceed 1 - c/n");
  bounds->add_option("--csv", bounds_args.csv, "per-vertex CSV output path");
  bounds->add_option("--out", bounds_args.out, "also write the JSON envelope here");

  SuppressorArgs sup_args;
  CLI::App* suppressor = app.add_subcommand(
      "suppressor", "Relaxed clique-chain upper bound for the spoked family");
  suppressor->add_option("--n", sup_args.n, "total vertices")->required();
  suppressor->add_option("--phi", sup_args.phi, "spokes per nose")->required();
  suppressor->add_option("--r", sup_args.r, "mutant fitness")->required();
  suppressor->add_option("--csv", sup_args.csv, "chain values CSV output path");
  suppressor->add_option("--out", sup_args.out,
                         "also write the JSON envelope here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  gen_args.phi_set = phi_opt->count() > 0;

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (exact->parsed()) return run_exact(exact_args, t0);
    if (simulate->parsed()) return run_simulate(sim_args, t0);
    if (urchin->parsed()) return run_urchin(urchin_args, t0);
    if (bounds->parsed()) return run_bounds(bounds_args, t0);
    if (suppressor->parsed()) return run_suppressor(sup_args, t0);
  } catch (const moran::ConstraintError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const moran::SizeCapError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const moran::GraphInvalidError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const moran::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
