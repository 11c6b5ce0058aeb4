// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icsched/maxsum.hpp"
#include "icsched/net_model.hpp"
#include "icsched/scenario.hpp"
#include "icsched/utility.hpp"

namespace icsched {

enum class Scenario { Apartment, Road, Synthetic };

std::string scenario_name(Scenario s);

struct ExperimentConfig {
  Scenario scenario = Scenario::Apartment;
  int drops = 100;
  UtilityKind utility = UtilityKind::log();
  std::vector<int> bp_iteration_counts = {1, 4};  // fixed-iteration variants to score
  RunOptions bp;                                  // the run-to-convergence variant
  bool oracle = false;
  std::uint64_t master_seed = 1;
  int threads = 1;
  bool dump_instances = false;
  double loss_factor = kDefaultLossFactor;
  ApartmentConfig apartment;
  RoadConfig road;
  SyntheticConfig synthetic;
  // When set, every drop evaluates this instance instead of generating one.
  std::optional<NetworkInstance> fixed_instance;
};

/// Per-drop outcome. `rates` holds the per-link achieved rates of each
/// method ("reuse1", "bp_ic_<k>", "bp_ic_converged", "oracle"); `utilities`
/// the matching totals on that drop's utility tables.
struct DropResult {
  std::uint64_t seed = 0;
  bool converged = false;
  int iterations_used = 0;
  std::map<std::string, std::vector<double>> rates;
  std::map<std::string, double> utilities;
  std::map<std::string, ScheduleVector> schedules;  // raw BP decisions, per BP method
  bool oracle_skipped = false;
  std::string instance_json;  // filled when the config asks for instance dumps
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<std::string> methods;
  std::vector<DropResult> drops;
  std::map<std::string, std::vector<double>> pooled_rates;  // per method, drop order
};

// Largest grid rate within the reuse-1 cap, per link. Shares the grid and
// loss factor with the IC path so the comparison isolates the IC mechanism.
std::vector<double> run_reuse1_baseline(const NetworkInstance& inst,
                                        double loss_factor = kDefaultLossFactor);

// Monte-Carlo campaign over seeded drops: generate, score reuse-1 and
// max-sum at each configured iteration budget, pool the rates. Deterministic
// given the master seed regardless of thread count.
ExperimentReport run_static_experiment(const ExperimentConfig& cfg);

struct DynamicConfig {
  UtilityKind base_utility = UtilityKind::log();
  int slots = 100;
  double alpha = 0.1;
  int bp_iters_per_slot = 4;
  double bp_damping = 0.5;
  double loss_factor = kDefaultLossFactor;
};

struct DynamicResult {
  std::vector<std::vector<double>> achieved;   // [slot][link]
  std::vector<std::vector<double>> avg_rates;  // [slot+1][link], row 0 = initial
  std::vector<ScheduleVector> schedules;       // projected attempt per slot
};

// Time-slotted scheduler on one fixed instance: each slot reweights the
// utility tables by the marginal utility at the current average rates, runs
// a few max-sum rounds, projects, and filters the averages.
DynamicResult run_dynamic_experiment(const NetworkInstance& inst, const DynamicConfig& cfg);

// Nearest-rank percentile of an unsorted sample set (p in (0, 100]).
double percentile(std::vector<double> samples, double p);

// Writes <out_dir>/cdf.csv (method, rate_bps_hz, cum_prob), a JSON report
// with config echo, seeds, and per-drop stats, and optional instance dumps.
void emit_results(const ExperimentReport& report, const std::string& out_dir);

}  // namespace icsched
