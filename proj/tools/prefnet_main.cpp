// Command-line front end: seeded sweeps, single realizations, small-graph
// equilibrium enumeration, figure-surface export and the built-in
// verification suites.
//
// Exit codes: 0 success, 1 validation error, 2 runtime error,
// 3 verification-suite failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prefnet/config.hpp"
#include "prefnet/equilibrium.hpp"
#include "prefnet/results.hpp"
#include "prefnet/selfcheck.hpp"

namespace {

using namespace prefnet;

struct TopologyFlags {
  std::string topology = "er";
  int n = 100;
  double mean_degree = 10.0;
  int m_attach = 3;

  void attach(CLI::App* cmd) {
    cmd->add_option("--topology", topology, "Network model: er or ba")
        ->check(CLI::IsMember({"er", "ba"}));
    cmd->add_option("--n", n, "Number of nodes");
    cmd->add_option("--mean-degree", mean_degree, "ER mean degree");
    cmd->add_option("--m-attach", m_attach, "BA attachments per new node");
  }

  TopologySpec spec() const {
    return topology == "er" ? TopologySpec::er(n, mean_degree) : TopologySpec::ba(n, m_attach);
  }
};

GameKind parse_game_flag(const std::string& s) {
  return s == "ag" ? GameKind::Anticoordination : GameKind::Coordination;
}

std::vector<std::uint8_t> parse_pref_list(const std::string& csv) {
  std::vector<std::uint8_t> prefs;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "0") {
      prefs.push_back(0);
    } else if (item == "1") {
      prefs.push_back(1);
    } else {
      throw ConfigError("--prefs expects a comma-separated list of 0/1 values");
    }
  }
  if (prefs.empty()) throw ConfigError("--prefs is empty");
  return prefs;
}

std::string profile_string(const std::vector<std::uint8_t>& actions) {
  std::string s;
  for (const auto a : actions) s.push_back(a ? '1' : '0');
  return s;
}

// ---------------------------------------------------------------- sweep --

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              const std::string& agg_path, const std::string& agg_json_path, int threads) {
  const SweepConfig cfg = load_config_file(config_path);
  const auto records = run_sweep(cfg, threads);
  write_results(records, out_path);
  std::size_t runs = 0;
  for (const auto& r : records) runs += r.runs.size();
  if (!agg_path.empty()) write_aggregate_csv(records, agg_path);
  if (!agg_json_path.empty()) write_aggregate_json(records, agg_json_path);
  std::cout << "wrote " << runs << " realizations over " << records.size() << " coordinates to "
            << out_path << "\n";
  return 0;
}

// ------------------------------------------------------------------ run --

int cmd_run(const TopologyFlags& topo, const std::string& game, const std::string& dynamics,
            const std::string& info, double alpha, double beta, double rho0,
            std::uint64_t seed, int max_steps, double update_fraction, int window,
            const std::string& init, bool trajectory, const std::string& dump_graph) {
  Coordinate c;
  c.topology = topo.spec();
  c.game = parse_game_flag(game);
  if (dynamics == "pi" && info == "incomplete") {
    throw ConfigError("proportional imitation cannot run under incomplete information");
  }
  c.rule = dynamics == "pi" ? DynamicsRule::ProportionalImitation
           : info == "incomplete" ? DynamicsRule::BestResponseIncomplete
                                  : DynamicsRule::BestResponseComplete;
  c.update_fraction = update_fraction;
  c.alpha = alpha;
  c.beta = beta;
  c.rho0 = rho0;
  if (!(rho0 >= 0.0 && rho0 <= 1.0)) throw ConfigError("--rho0 must lie in [0, 1]");

  DynamicsSpec spec;
  spec.rule = c.rule;
  spec.update_fraction = update_fraction;
  spec.max_steps = max_steps;
  spec.convergence_window = window;
  const InitPolicy init_policy =
      init == "preferred" ? InitPolicy::AllPreferred : InitPolicy::UniformRandomAction;

  const auto seeds = split_realization_seed(seed);
  const Graph g = generate_graph(c.topology, seeds.graph_seed);
  if (!dump_graph.empty()) {
    std::ofstream out(dump_graph, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write graph file: " + dump_graph);
    write_edge_list(g, out);
  }
  const PayoffParams params(alpha, beta);
  const RunResult rr =
      run(g, spec, params, c.game, c.rho(), init_policy, seeds.run_seed, trajectory);
  const Observables obs = observables(rr.final_state);
  const std::string cls =
      rr.termination == Termination::FixedPoint
          ? to_string(classify(rr.final_state, params, c.game))
          : std::string("none");

  std::cout << "coordinate topology=" << to_string(c.topology.kind) << " n=" << c.topology.n
            << " mean_degree_or_m=" << format_g9(c.topology.degree_param())
            << " game=" << to_string(c.game) << " dynamics=" << dynamics_name(c.rule)
            << " info=" << info_name(c.rule) << " alpha=" << format_g9(alpha)
            << " beta=" << format_g9(beta) << " ratio=" << format_g9(alpha / beta)
            << " rho0=" << format_g9(rho0) << " seed=" << seed << "\n";
  if (trajectory && rr.trajectory) {
    for (std::size_t t = 0; t < rr.trajectory->size(); ++t) {
      const auto& s = (*rr.trajectory)[t];
      std::cout << "step t=" << t << " d1=" << format_g9(s.d1) << " df=" << format_g9(s.df)
                << " changed=" << s.changed << "\n";
    }
  }
  std::cout << "result steps=" << rr.steps_taken << " termination=" << to_string(rr.termination)
            << " d1=" << format_g9(obs.d1) << " df=" << format_g9(obs.df) << " class=" << cls
            << "\n";
  return 0;
}

// ------------------------------------------------------------ enumerate --

int cmd_enumerate(const std::string& edges_path, const TopologyFlags& topo, bool topo_given,
                  std::uint64_t graph_seed, const std::string& prefs_csv, double rho0,
                  std::uint64_t pref_seed, const std::string& game, double alpha, double beta) {
  Graph g;
  if (!edges_path.empty()) {
    std::ifstream in(edges_path);
    if (!in) throw ConfigError("cannot open edge list: " + edges_path);
    g = read_edge_list(in);
  } else if (topo_given) {
    g = generate_graph(topo.spec(), graph_seed);
  } else {
    throw ConfigError("enumerate needs either --edges or --topology parameters");
  }

  std::vector<std::uint8_t> prefs;
  if (!prefs_csv.empty()) {
    prefs = parse_pref_list(prefs_csv);
    if (static_cast<int>(prefs.size()) != g.n()) {
      throw ConfigError("--prefs length " + std::to_string(prefs.size()) +
                        " does not match graph size " + std::to_string(g.n()));
    }
  } else {
    prefs = init_population(g, 1.0 - rho0, InitPolicy::AllPreferred, pref_seed).preferences;
  }

  const PayoffParams params(alpha, beta);
  const GameKind kind = parse_game_flag(game);
  const auto found = enumerate_equilibria(g, prefs, params, kind);

  std::cout << "n=" << g.n() << " preferences=" << profile_string(prefs)
            << " equilibria=" << found.size() << "\n";
  PopulationState s;
  s.graph = &g;
  s.preferences = prefs;
  for (const auto& eq : found) {
    s.actions = eq.actions;
    const Observables obs = observables(s);
    std::cout << "x=" << profile_string(eq.actions) << " class=" << to_string(eq.cls)
              << " d1=" << format_g9(obs.d1) << " df=" << format_g9(obs.df) << "\n";
  }
  return 0;
}

// --------------------------------------------------------------- figure --

SweepConfig figure_preset(const std::string& name) {
  SweepConfig cfg;
  if (name == "fig2") {
    cfg = default_paper_grid(DynamicsRule::BestResponseComplete);
    cfg.games = {GameKind::Coordination};
  } else if (name == "fig4") {
    cfg = default_paper_grid(DynamicsRule::BestResponseComplete);
    cfg.games = {GameKind::Coordination};
    cfg.topologies = {TopologySpec::er(1000, 5.0), TopologySpec::er(1000, 10.0),
                      TopologySpec::er(1000, 20.0), TopologySpec::er(1000, 40.0),
                      TopologySpec::ba(1000, 3)};
    cfg.realizations = 20;
  } else if (name == "fig6") {
    cfg = default_paper_grid(DynamicsRule::ProportionalImitation);
    cfg.games = {GameKind::Coordination};
  } else if (name == "fig8") {
    cfg = default_paper_grid(DynamicsRule::BestResponseComplete);
    cfg.games = {GameKind::Anticoordination};
  } else if (name == "fig10") {
    cfg = default_paper_grid(DynamicsRule::ProportionalImitation);
    cfg.games = {GameKind::Anticoordination};
  } else if (name == "fig12") {
    cfg = default_paper_grid(DynamicsRule::BestResponseIncomplete);
    cfg.games = {GameKind::Coordination};
  } else if (name == "ag-incomplete") {
    cfg = default_paper_grid(DynamicsRule::BestResponseIncomplete);
    cfg.games = {GameKind::Anticoordination};
  } else {
    throw ConfigError("unknown figure name '" + name +
                      "' (expected fig2, fig4, fig6, fig8, fig10, fig12 or ag-incomplete)");
  }
  return cfg;
}

int cmd_figure(const std::string& name, std::uint64_t seed, const std::string& out_path,
               const std::string& records_path, const std::string& agg_json_path,
               const std::string& config_out, int threads) {
  SweepConfig cfg = figure_preset(name);
  cfg.base_seed = seed;
  if (!config_out.empty()) write_config_file(cfg, config_out);
  const auto records = run_sweep(cfg, threads);
  write_aggregate_csv(records, out_path);
  if (!records_path.empty()) write_results(records, records_path);
  if (!agg_json_path.empty()) write_aggregate_json(records, agg_json_path);
  std::cout << "wrote " << records.size() << " surface rows to " << out_path << "\n";
  return 0;
}

// --------------------------------------------------------------- verify --

int cmd_verify(std::uint64_t seed) {
  const auto results = run_all_checks(seed);
  bool all_passed = true;
  for (const auto& r : results) {
    all_passed &= r.passed;
    std::cout << (r.passed ? "ok   " : "FAIL ") << r.name << " — " << r.detail << "\n";
  }
  std::cout << (all_passed ? "verification passed" : "verification FAILED") << "\n";
  return all_passed ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for two-action network games with heterogeneous preferences"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a config file and write per-realization CSV");
  std::string sweep_config, sweep_out, sweep_agg, sweep_agg_json;
  int sweep_threads = 0;
  sweep->add_option("--config", sweep_config, "JSON sweep configuration")->required();
  sweep->add_option("--out", sweep_out, "Output CSV path")->required();
  sweep->add_option("--agg", sweep_agg, "Optional aggregate CSV path");
  sweep->add_option("--agg-json", sweep_agg_json, "Optional aggregate JSON path");
  sweep->add_option("--threads", sweep_threads, "Worker threads (0 = auto)");

  // run
  auto* runc = app.add_subcommand("run", "Run a single realization and print observables");
  TopologyFlags run_topo;
  run_topo.attach(runc);
  std::string run_game = "cg", run_dyn = "br", run_info = "complete", run_init = "random";
  double run_alpha = 0.6, run_beta = 0.4, run_rho0 = 0.5, run_fraction = 1.0;
  std::uint64_t run_seed = 0;
  int run_steps = 100, run_window = 20;
  bool run_traj = false;
  std::string run_dump_graph;
  runc->add_option("--game", run_game, "cg or ag")->check(CLI::IsMember({"cg", "ag"}));
  runc->add_option("--dynamics", run_dyn, "br or pi")->check(CLI::IsMember({"br", "pi"}));
  runc->add_option("--info", run_info, "complete or incomplete")
      ->check(CLI::IsMember({"complete", "incomplete"}));
  runc->add_option("--alpha", run_alpha, "Reward for the liked action");
  runc->add_option("--beta", run_beta, "Reward for the disliked action");
  runc->add_option("--rho0", run_rho0, "Fraction of 0-preference agents");
  runc->add_option("--seed", run_seed, "Realization seed")->required();
  runc->add_option("--steps", run_steps, "Step budget");
  runc->add_option("--update-fraction", run_fraction, "Imitation update fraction");
  runc->add_option("--window", run_window, "Imitation quiet-step window");
  runc->add_option("--init", run_init, "random or preferred")
      ->check(CLI::IsMember({"random", "preferred"}));
  runc->add_flag("--trajectory", run_traj, "Print the per-step (d1, df) series");
  runc->add_option("--dump-graph", run_dump_graph, "Write the generated graph as an edge list");

  // enumerate
  auto* enumc = app.add_subcommand("enumerate", "Exhaustive Nash enumeration on a small graph");
  TopologyFlags enum_topo;
  enum_topo.n = 0;  // sentinel: only used when topology flags are present
  std::string enum_edges, enum_prefs, enum_game = "cg";
  double enum_alpha = 0.6, enum_beta = 0.4, enum_rho0 = 0.5;
  std::uint64_t enum_graph_seed = 0, enum_pref_seed = 0;
  enumc->add_option("--edges", enum_edges, "Edge-list file (see README for the format)");
  auto* enum_topo_opt = enumc->add_option("--topology", enum_topo.topology, "er or ba")
                            ->check(CLI::IsMember({"er", "ba"}));
  enumc->add_option("--n", enum_topo.n, "Number of nodes");
  enumc->add_option("--mean-degree", enum_topo.mean_degree, "ER mean degree");
  enumc->add_option("--m-attach", enum_topo.m_attach, "BA attachments per new node");
  enumc->add_option("--graph-seed", enum_graph_seed, "Graph generation seed");
  enumc->add_option("--prefs", enum_prefs, "Explicit preferences, e.g. \"1,0,0,1\"");
  enumc->add_option("--rho0", enum_rho0, "Fraction of 0-preference agents (with --pref-seed)");
  enumc->add_option("--pref-seed", enum_pref_seed, "Preference placement seed");
  enumc->add_option("--game", enum_game, "cg or ag")->check(CLI::IsMember({"cg", "ag"}));
  enumc->add_option("--alpha", enum_alpha, "Reward for the liked action");
  enumc->add_option("--beta", enum_beta, "Reward for the disliked action");

  // figure
  auto* figc = app.add_subcommand("figure", "Emit a plot-ready surface for a named figure");
  std::string fig_name, fig_out, fig_records, fig_agg_json, fig_config_out;
  std::uint64_t fig_seed = 0;
  int fig_threads = 0;
  figc->add_option("--name", fig_name,
                   "fig2, fig4, fig6, fig8, fig10, fig12 or ag-incomplete")->required();
  figc->add_option("--seed", fig_seed, "Base seed")->required();
  figc->add_option("--out", fig_out, "Aggregate surface CSV path")->required();
  figc->add_option("--records", fig_records, "Optional per-realization CSV path");
  figc->add_option("--agg-json", fig_agg_json, "Optional aggregate JSON path");
  figc->add_option("--config-out", fig_config_out,
                   "Write the equivalent sweep config to this path");
  figc->add_option("--threads", fig_threads, "Worker threads (0 = auto)");

  // verify
  auto* verc = app.add_subcommand("verify", "Run the built-in oracle and property suites");
  std::uint64_t ver_seed = 1;
  verc->add_option("--seed", ver_seed, "Seed for the randomized suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sweep->parsed()) {
      return cmd_sweep(sweep_config, sweep_out, sweep_agg, sweep_agg_json, sweep_threads);
    }
    if (runc->parsed()) {
      return cmd_run(run_topo, run_game, run_dyn, run_info, run_alpha, run_beta, run_rho0,
                     run_seed, run_steps, run_fraction, run_window, run_init, run_traj,
                     run_dump_graph);
    }
    if (enumc->parsed()) {
      return cmd_enumerate(enum_edges, enum_topo, enum_topo_opt->count() > 0 || enum_topo.n > 0,
                           enum_graph_seed, enum_prefs, enum_rho0, enum_pref_seed, enum_game,
                           enum_alpha, enum_beta);
    }
    if (figc->parsed()) {
      return cmd_figure(fig_name, fig_seed, fig_out, fig_records, fig_agg_json, fig_config_out,
                        fig_threads);
    }
    if (verc->parsed()) {
      return cmd_verify(ver_seed);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
