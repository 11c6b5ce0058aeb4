// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: Monte-Carlo scheduling campaigns, solver
// certification against the exhaustive oracle, and interference-graph
// property sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "icsched/experiment.hpp"
#include "icsched/graph.hpp"
#include "icsched/oracle.hpp"
#include "icsched/rng.hpp"

using namespace icsched;

namespace {

UtilityKind parse_utility(const std::string& name, double beta) {
  if (name == "log") return UtilityKind::log();
  if (name == "sumrate") return UtilityKind::sum_rate();
  if (name == "betafair") return UtilityKind::beta_fair(beta);
  throw CLI::ValidationError("--utility", "expected log, sumrate or betafair");
}

Scenario parse_scenario(const std::string& name) {
  if (name == "apartment") return Scenario::Apartment;
  if (name == "road") return Scenario::Road;
  if (name == "synthetic") return Scenario::Synthetic;
  throw CLI::ValidationError("--scenario", "expected apartment, road or synthetic");
}

// The config file takes precedence over flags for every key it carries.
void apply_config_overrides(const std::string& path, std::string& scenario, int& drops,
                            std::string& utility, double& beta, std::vector<int>& bp_iters,
                            double& damping, double& tol, int& max_iters, std::string& oracle,
                            std::uint64_t& seed, std::string& out_dir, int& threads) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  nlohmann::json j;
  in >> j;
  if (j.contains("scenario")) scenario = j["scenario"].get<std::string>();
  if (j.contains("drops")) drops = j["drops"].get<int>();
  if (j.contains("utility")) utility = j["utility"].get<std::string>();
  if (j.contains("beta")) beta = j["beta"].get<double>();
  if (j.contains("bp_iters")) bp_iters = j["bp_iters"].get<std::vector<int>>();
  if (j.contains("damping")) damping = j["damping"].get<double>();
  if (j.contains("tol")) tol = j["tol"].get<double>();
  if (j.contains("max_iters")) max_iters = j["max_iters"].get<int>();
  if (j.contains("oracle")) oracle = j["oracle"].get<bool>() ? "on" : "off";
  if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
  if (j.contains("out")) out_dir = j["out"].get<std::string>();
  if (j.contains("threads")) threads = j["threads"].get<int>();
}

NetworkInstance first_drop_instance(const ExperimentConfig& cfg) {
  if (cfg.fixed_instance) return *cfg.fixed_instance;
  const std::uint64_t seed = derive_stream_seed(cfg.master_seed, 0);
  switch (cfg.scenario) {
    case Scenario::Apartment: return gen_apartment_drop(cfg.apartment, seed).instance;
    case Scenario::Road: return gen_road_drop(cfg.road, seed).instance;
    case Scenario::Synthetic: return gen_synthetic_drop(cfg.synthetic, seed).instance;
  }
  throw std::logic_error("unknown scenario");
}

int cmd_run(const std::string& scenario, int drops, const std::string& utility, double beta,
            const std::vector<int>& bp_iters, double damping, double tol, int max_iters,
            const std::string& oracle, std::uint64_t seed, const std::string& out_dir, int threads,
            bool dump_instances, const std::string& load_path, const std::string& dump_path,
            bool verbose) {
  ExperimentConfig cfg;
  cfg.scenario = parse_scenario(scenario);
  cfg.drops = drops;
  cfg.utility = parse_utility(utility, beta);
  cfg.bp_iteration_counts = bp_iters;
  cfg.bp.max_iters = max_iters;
  cfg.bp.damping = damping;
  cfg.bp.tol = tol;
  cfg.oracle = oracle == "on";
  cfg.master_seed = seed;
  cfg.threads = threads;
  cfg.dump_instances = dump_instances;
  if (!load_path.empty()) cfg.fixed_instance = load_instance(load_path);
  if (verbose && drops == 1 && threads == 1) cfg.bp.trace = &std::cerr;

  if (!dump_path.empty()) {
    save_instance(first_drop_instance(cfg), dump_path);
    std::cout << "instance written to " << dump_path << "\n";
  }

  const ExperimentReport report = run_static_experiment(cfg);
  if (!out_dir.empty()) emit_results(report, out_dir);

  int converged = 0;
  for (const auto& d : report.drops) converged += d.converged ? 1 : 0;
  std::cout << "scenario=" << scenario_name(cfg.scenario) << " drops=" << cfg.drops
            << " converged=" << converged << "/" << cfg.drops << "\n";
  for (const std::string& m : report.methods) {
    const auto& pool = report.pooled_rates.at(m);
    if (pool.empty()) continue;
    std::printf("%-16s p10=%.4f p50=%.4f bps/Hz (%zu samples)\n", m.c_str(),
                percentile(pool, 10.0), percentile(pool, 50.0), pool.size());
  }
  const auto& reuse1 = report.pooled_rates.at("reuse1");
  const auto& ic = report.pooled_rates.at("bp_ic_converged");
  if (!reuse1.empty() && !ic.empty()) {
    const double base10 = percentile(reuse1, 10.0), base50 = percentile(reuse1, 50.0);
    if (base10 > 0.0)
      std::printf("cell-edge (p10) gain IC/reuse1: %.2fx\n", percentile(ic, 10.0) / base10);
    if (base50 > 0.0)
      std::printf("median (p50) gain IC/reuse1: %.2fx\n", percentile(ic, 50.0) / base50);
  }
  if (!out_dir.empty()) std::cout << "results written to " << out_dir << "\n";
  return 0;
}

int cmd_check_theorem(int instances, int n, int grid, std::uint64_t seed, double damping,
                      double tol, int max_iters) {
  SyntheticConfig cfg;
  cfg.n = n;
  cfg.grid_points = grid;
  RunOptions opts;
  opts.max_iters = max_iters;
  opts.damping = damping;
  opts.tol = tol;

  int converged = 0, violations = 0;
  double worst_gap = 0.0;
  for (int k = 0; k < instances; ++k) {
    const Drop drop = gen_synthetic_drop(cfg, derive_stream_seed(seed, static_cast<std::uint64_t>(k)));
    const UtilityKind kind = k % 2 == 0 ? UtilityKind::log() : UtilityKind::sum_rate();
    const auto tables = build_utility_tables(drop.instance, kind);
    const CompareReport rep = compare_bp_to_oracle(drop.instance, tables, opts);
    if (!rep.converged) continue;
    ++converged;
    worst_gap = std::max(worst_gap, std::abs(rep.gap));
    if (std::abs(rep.gap) > 1e-9) {
      ++violations;
      std::printf("violation: instance %d gap=%.3e\n", k, rep.gap);
    }
  }
  std::printf(
      "check-theorem: n=%d grid=%d instances=%d converged=%d (%.1f%%) violations=%d "
      "worst_gap=%.3e\n",
      n, grid, instances, converged, 100.0 * converged / instances, violations, worst_gap);
  return violations == 0 ? 0 : 1;
}

int cmd_check_graph(int trials, int n, double none_frac, std::uint64_t seed) {
  Rng rng(seed);
  int violations = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<int> sigma(static_cast<std::size_t>(n), kNoInterferer);
    for (int i = 0; i < n; ++i) {
      if (none_frac > 0.0 && rng.uniform() < none_frac) continue;
      int j = rng.uniform_int(n - 1);
      if (j >= i) ++j;
      sigma[static_cast<std::size_t>(i)] = j;
    }
    const CycleCheck check = verify_single_cycle_property(sigma);
    if (!check.ok) {
      ++violations;
      std::printf("violation at trial %d: component with %d cycles\n", t,
                  check.witness->cycle_count);
    }
  }
  std::printf("check-graph: trials=%d n=%d none_frac=%.2f violations=%d\n", trials, n, none_frac,
              violations);
  return violations == 0 ? 0 : 1;
}

int cmd_dynamic(const std::string& scenario, int slots, double alpha, const std::string& utility,
                double beta, int bp_iters, std::uint64_t seed, const std::string& load_path,
                const std::string& out_path) {
  NetworkInstance inst;
  if (!load_path.empty()) {
    inst = load_instance(load_path);
  } else {
    const Scenario s = parse_scenario(scenario);
    inst = s == Scenario::Apartment ? gen_apartment_drop(ApartmentConfig{}, seed).instance
           : s == Scenario::Road    ? gen_road_drop(RoadConfig{}, seed).instance
                                    : gen_synthetic_drop(SyntheticConfig{}, seed).instance;
  }
  DynamicConfig cfg;
  cfg.base_utility = parse_utility(utility, beta);
  cfg.slots = slots;
  cfg.alpha = alpha;
  cfg.bp_iters_per_slot = bp_iters;
  const DynamicResult res = run_dynamic_experiment(inst, cfg);

  const auto& final_avg = res.avg_rates.back();
  std::cout << "dynamic: slots=" << slots << " alpha=" << alpha << "\nfinal average rates:";
  for (double r : final_avg) std::printf(" %.4f", r);
  std::cout << " bps/Hz\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot open for writing: " << out_path << "\n";
      return 1;
    }
    out << "slot";
    for (int i = 0; i < inst.n; ++i) out << ",avg_rate_" << i + 1;
    out << "\n";
    for (std::size_t t = 0; t < res.avg_rates.size(); ++t) {
      out << t;
      for (double r : res.avg_rates[t]) {
        char buf[32];
        std::snprintf(buf, sizeof buf, ",%.10g", r);
        out << buf;
      }
      out << "\n";
    }
    std::cout << "trajectory written to " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Utility-maximizing scheduler for dominant-interferer networks with IC"};
  app.require_subcommand(1);

  std::string scenario = "apartment", utility = "log", oracle = "off";
  std::string out_dir, config_path, load_path, dump_path;
  int drops = 100, max_iters = 100, threads = 1;
  double beta = 1.0, damping = 0.5, tol = 1e-6;
  std::uint64_t seed = 1;
  std::vector<int> bp_iters = {1, 4};
  bool dump_instances = false, verbose = false;

  auto* run = app.add_subcommand("run", "Run a multi-drop static scheduling campaign");
  run->add_option("--scenario", scenario, "apartment|road|synthetic");
  run->add_option("--drops", drops, "number of random drops");
  run->add_option("--utility", utility, "log|sumrate|betafair");
  run->add_option("--beta", beta, "beta for betafair");
  run->add_option("--bp-iters", bp_iters, "fixed iteration counts to score")->delimiter(',');
  run->add_option("--damping", damping, "fractional update factor in (0,1]");
  run->add_option("--tol", tol, "convergence tolerance on message deltas");
  run->add_option("--max-iters", max_iters, "iteration cap for the converged run");
  run->add_option("--oracle", oracle, "on|off exhaustive baseline (small instances only)");
  run->add_option("--seed", seed, "master seed");
  run->add_option("--out", out_dir, "output directory for cdf.csv and report.json");
  run->add_option("--threads", threads, "worker threads over drops");
  run->add_flag("--dump-instances", dump_instances, "write per-drop instance files");
  run->add_option("--load-instance", load_path, "run on a fixed instance file");
  run->add_option("--dump-instance", dump_path, "write the first drop's instance and continue");
  run->add_option("--config", config_path, "JSON config; overrides flags");
  run->add_flag("--verbose", verbose, "per-round trace (single drop, single thread)");

  int ct_instances = 500, ct_n = 3, ct_grid = 10;
  std::uint64_t ct_seed = 1;
  double ct_damping = 0.5, ct_tol = 1e-6;
  int ct_max_iters = 200;
  auto* ct =
      app.add_subcommand("check-theorem", "Certify converged runs against the exhaustive oracle");
  ct->add_option("--instances", ct_instances, "random instances to draw");
  ct->add_option("--n", ct_n, "links per instance");
  ct->add_option("--grid", ct_grid, "rate grid points");
  ct->add_option("--seed", ct_seed, "master seed");
  ct->add_option("--damping", ct_damping, "fractional update factor");
  ct->add_option("--tol", ct_tol, "convergence tolerance");
  ct->add_option("--max-iters", ct_max_iters, "iteration cap");

  int cg_trials = 10000, cg_n = 50;
  double cg_none = 0.0;
  std::uint64_t cg_seed = 1;
  auto* cg = app.add_subcommand("check-graph",
                                "Sweep random interferer maps for the single-cycle property");
  cg->add_option("--trials", cg_trials, "random sigma maps to draw");
  cg->add_option("--n", cg_n, "links per map");
  cg->add_option("--none-frac", cg_none, "probability a link has no interferer");
  cg->add_option("--seed", cg_seed, "seed");

  int dy_slots = 200, dy_bp_iters = 4;
  double dy_alpha = 0.1, dy_beta = 1.0;
  std::string dy_scenario = "apartment", dy_utility = "log", dy_load, dy_out;
  std::uint64_t dy_seed = 1;
  auto* dy = app.add_subcommand("dynamic", "Time-slotted scheduling on one fixed drop");
  dy->add_option("--scenario", dy_scenario, "apartment|road|synthetic");
  dy->add_option("--slots", dy_slots, "time slots");
  dy->add_option("--alpha", dy_alpha, "averaging factor in (0,1]");
  dy->add_option("--utility", dy_utility, "log|sumrate|betafair");
  dy->add_option("--beta", dy_beta, "beta for betafair");
  dy->add_option("--bp-iters", dy_bp_iters, "max-sum rounds per slot");
  dy->add_option("--seed", dy_seed, "drop seed");
  dy->add_option("--load-instance", dy_load, "fixed instance file");
  dy->add_option("--out", dy_out, "CSV trajectory output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (!config_path.empty())
        apply_config_overrides(config_path, scenario, drops, utility, beta, bp_iters, damping, tol,
                               max_iters, oracle, seed, out_dir, threads);
      return cmd_run(scenario, drops, utility, beta, bp_iters, damping, tol, max_iters, oracle,
                     seed, out_dir, threads, dump_instances, load_path, dump_path, verbose);
    }
    if (ct->parsed())
      return cmd_check_theorem(ct_instances, ct_n, ct_grid, ct_seed, ct_damping, ct_tol,
                               ct_max_iters);
    if (cg->parsed()) return cmd_check_graph(cg_trials, cg_n, cg_none, cg_seed);
    if (dy->parsed())
      return cmd_dynamic(dy_scenario, dy_slots, dy_alpha, dy_utility, dy_beta, dy_bp_iters, dy_seed,
                         dy_load, dy_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
