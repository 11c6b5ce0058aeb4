// SPDX-License-Identifier: Apache-2.0
#include "icsched/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "icsched/oracle.hpp"
#include "icsched/rate_region.hpp"
#include "icsched/rng.hpp"

namespace icsched {

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Apartment: return "apartment";
    case Scenario::Road: return "road";
    case Scenario::Synthetic: return "synthetic";
  }
  return "?";
}

namespace {

std::string utility_name(const UtilityKind& kind) {
  switch (kind.family) {
    case UtilityFamily::SumRate: return "sumrate";
    case UtilityFamily::Log: return "log";
    case UtilityFamily::BetaFair: return "betafair";
    case UtilityFamily::Weighted: return "weighted";
  }
  return "?";
}

NetworkInstance generate_drop(const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.fixed_instance) return *cfg.fixed_instance;
  switch (cfg.scenario) {
    case Scenario::Apartment: return gen_apartment_drop(cfg.apartment, seed).instance;
    case Scenario::Road: return gen_road_drop(cfg.road, seed).instance;
    case Scenario::Synthetic: return gen_synthetic_drop(cfg.synthetic, seed).instance;
  }
  throw std::logic_error("unknown scenario");
}

ScheduleVector reuse1_schedule(const NetworkInstance& inst, double loss_factor) {
  ScheduleVector x;
  x.idx.resize(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) {
    const double cap = std::log2(1.0 + sinr_reuse1(inst, i) / loss_factor);
    x.idx[static_cast<std::size_t>(i)] = inst.grid.largest_index_leq(cap, kFeasTol);
  }
  return x;
}

DropResult evaluate_drop(const ExperimentConfig& cfg, int drop_index) {
  DropResult out;
  out.seed = derive_stream_seed(cfg.master_seed, static_cast<std::uint64_t>(drop_index));
  const NetworkInstance inst = generate_drop(cfg, out.seed);
  const auto tables = build_utility_tables(inst, cfg.utility, cfg.loss_factor);

  const ScheduleVector reuse1 = reuse1_schedule(inst, cfg.loss_factor);
  out.rates["reuse1"] = schedule_rates(inst, reuse1);
  out.utilities["reuse1"] = total_utility(inst, tables, reuse1);

  auto score_bp = [&](const std::string& method, const RunOptions& opts) {
    const BPResult bp = run_max_sum(inst, tables, opts);
    const ScheduleVector projected = project_feasible_schedule(inst, bp.decisions, cfg.loss_factor);
    out.rates[method] = schedule_rates(inst, projected);
    out.utilities[method] = total_utility(inst, tables, projected);
    out.schedules[method] = bp.decisions;
    return bp;
  };

  for (int k : cfg.bp_iteration_counts) {
    RunOptions opts = cfg.bp;
    opts.max_iters = k;
    opts.trace = nullptr;
    score_bp("bp_ic_" + std::to_string(k), opts);
  }

  RunOptions conv = cfg.bp;
  conv.trace = nullptr;
  const BPResult bp = score_bp("bp_ic_converged", conv);
  out.converged = bp.converged;
  out.iterations_used = bp.iterations_used;

  if (cfg.oracle) {
    try {
      const OracleResult best = exhaustive_optimum(inst, tables);
      std::vector<double> rates(static_cast<std::size_t>(inst.n));
      for (int i = 0; i < inst.n; ++i) {
        const LinkRegionParams p = region_params(inst, i, cfg.loss_factor);
        const int j = inst.sigma[static_cast<std::size_t>(i)];
        const double x_j =
            j == kNoInterferer ? 0.0 : inst.grid.value(best.best.idx[static_cast<std::size_t>(j)]);
        rates[static_cast<std::size_t>(i)] =
            achieved_rate(p, inst.grid.value(best.best.idx[static_cast<std::size_t>(i)]), x_j);
      }
      out.rates["oracle"] = std::move(rates);
      out.utilities["oracle"] = best.best_utility;
    } catch (const std::runtime_error&) {
      out.oracle_skipped = true;
    }
  }

  if (cfg.dump_instances) out.instance_json = dump_instance(inst);
  return out;
}

}  // namespace

std::vector<double> run_reuse1_baseline(const NetworkInstance& inst, double loss_factor) {
  return schedule_rates(inst, reuse1_schedule(inst, loss_factor));
}

ExperimentReport run_static_experiment(const ExperimentConfig& cfg) {
  if (cfg.drops < 1) throw std::invalid_argument("invalid-parameter: drops must be >= 1");
  ExperimentReport report;
  report.config = cfg;

  report.methods.push_back("reuse1");
  for (int k : cfg.bp_iteration_counts) report.methods.push_back("bp_ic_" + std::to_string(k));
  report.methods.push_back("bp_ic_converged");
  if (cfg.oracle) report.methods.push_back("oracle");

  report.drops.resize(static_cast<std::size_t>(cfg.drops));
  const int workers = std::max(1, cfg.threads);
  if (workers == 1) {
    for (int d = 0; d < cfg.drops; ++d)
      report.drops[static_cast<std::size_t>(d)] = evaluate_drop(cfg, d);
  } else {
    // Drops land in per-index slots; aggregation below runs in drop order,
    // so the report does not depend on the worker count.
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int d = next.fetch_add(1); d < cfg.drops; d = next.fetch_add(1))
          report.drops[static_cast<std::size_t>(d)] = evaluate_drop(cfg, d);
      });
    for (std::thread& t : pool) t.join();
  }

  for (const std::string& m : report.methods) report.pooled_rates[m] = {};
  bool warned = false;
  for (const DropResult& d : report.drops) {
    if (d.oracle_skipped && !warned) {
      std::cerr << "warning: oracle skipped, joint grid too large to enumerate\n";
      warned = true;
    }
    for (const std::string& m : report.methods) {
      const auto it = d.rates.find(m);
      if (it == d.rates.end()) continue;
      auto& pool = report.pooled_rates[m];
      pool.insert(pool.end(), it->second.begin(), it->second.end());
    }
  }
  return report;
}

DynamicResult run_dynamic_experiment(const NetworkInstance& inst, const DynamicConfig& cfg) {
  if (cfg.slots < 1) throw std::invalid_argument("invalid-parameter: slots must be >= 1");
  if (!(cfg.alpha > 0.0) || cfg.alpha > 1.0)
    throw std::invalid_argument("invalid-parameter: alpha must be in (0, 1]");

  DynamicResult result;
  std::vector<double> avg(static_cast<std::size_t>(inst.n), kAvgRateFloor);
  result.avg_rates.push_back(avg);

  RunOptions opts;
  opts.max_iters = cfg.bp_iters_per_slot;
  opts.damping = cfg.bp_damping;

  for (int t = 0; t < cfg.slots; ++t) {
    std::vector<UtilityKind> kinds(static_cast<std::size_t>(inst.n));
    for (int i = 0; i < inst.n; ++i)
      kinds[static_cast<std::size_t>(i)] = UtilityKind::weighted(
          marginal_weight(cfg.base_utility, avg[static_cast<std::size_t>(i)]));
    const auto tables = build_utility_tables(inst, kinds, cfg.loss_factor);
    const BPResult bp = run_max_sum(inst, tables, opts);
    const ScheduleVector projected = project_feasible_schedule(inst, bp.decisions, cfg.loss_factor);
    const std::vector<double> achieved = schedule_rates(inst, projected);
    for (int i = 0; i < inst.n; ++i)
      avg[static_cast<std::size_t>(i)] =
          update_avg_rate(avg[static_cast<std::size_t>(i)], achieved[static_cast<std::size_t>(i)], cfg.alpha);
    result.achieved.push_back(achieved);
    result.avg_rates.push_back(avg);
    result.schedules.push_back(projected);
  }
  return result;
}

double percentile(std::vector<double> samples, double p) {
  if (samples.empty()) throw std::invalid_argument("invalid-parameter: percentile of empty sample set");
  if (!(p > 0.0) || p > 100.0)
    throw std::invalid_argument("invalid-parameter: percentile p must be in (0, 100]");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  rank = std::min(std::max<std::size_t>(rank, 1), samples.size());
  return samples[rank - 1];
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

nlohmann::json config_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["scenario"] = scenario_name(cfg.scenario);
  j["drops"] = cfg.drops;
  j["utility"] = utility_name(cfg.utility);
  if (cfg.utility.family == UtilityFamily::BetaFair) j["beta"] = cfg.utility.beta;
  j["bp_iteration_counts"] = cfg.bp_iteration_counts;
  j["bp"] = {{"max_iters", cfg.bp.max_iters}, {"damping", cfg.bp.damping}, {"tol", cfg.bp.tol}};
  j["oracle"] = cfg.oracle;
  j["master_seed"] = cfg.master_seed;
  j["loss_factor"] = cfg.loss_factor;
  return j;
}

}  // namespace

void emit_results(const ExperimentReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir + ": " + ec.message());

  const fs::path cdf_path = fs::path(out_dir) / "cdf.csv";
  {
    std::ofstream cdf(cdf_path);
    if (!cdf) throw std::runtime_error("cannot open for writing: " + cdf_path.string());
    cdf << "method,rate_bps_hz,cum_prob\n";
    for (const std::string& m : report.methods) {
      const auto it = report.pooled_rates.find(m);
      if (it == report.pooled_rates.end() || it->second.empty()) continue;
      std::vector<double> sorted = it->second;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t k = 0; k < sorted.size(); ++k)
        cdf << m << "," << format_double(sorted[k]) << ","
            << format_double(static_cast<double>(k + 1) / static_cast<double>(sorted.size())) << "\n";
    }
  }

  nlohmann::json j;
  j["config"] = config_json(report.config);
  j["methods"] = report.methods;
  nlohmann::json drops = nlohmann::json::array();
  for (const DropResult& d : report.drops) {
    nlohmann::json dj;
    dj["seed"] = d.seed;
    dj["converged"] = d.converged;
    dj["iterations_used"] = d.iterations_used;
    dj["utilities"] = d.utilities;
    if (d.oracle_skipped) dj["oracle_skipped"] = true;
    drops.push_back(std::move(dj));
  }
  j["drops"] = std::move(drops);
  nlohmann::json agg;
  for (const std::string& m : report.methods) {
    const auto it = report.pooled_rates.find(m);
    if (it == report.pooled_rates.end() || it->second.empty()) continue;
    agg[m] = {{"samples", it->second.size()},
              {"p10", percentile(it->second, 10.0)},
              {"p50", percentile(it->second, 50.0)}};
  }
  j["pooled_percentiles"] = std::move(agg);

  const fs::path report_path = fs::path(out_dir) / "report.json";
  std::ofstream rep(report_path);
  if (!rep) throw std::runtime_error("cannot open for writing: " + report_path.string());
  rep << j.dump(2) << "\n";

  if (report.config.dump_instances) {
    const fs::path inst_dir = fs::path(out_dir) / "instances";
    fs::create_directories(inst_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + inst_dir.string() + ": " + ec.message());
    for (std::size_t d = 0; d < report.drops.size(); ++d) {
      if (report.drops[d].instance_json.empty()) continue;
      char name[32];
      std::snprintf(name, sizeof name, "drop_%04zu.json", d);
      std::ofstream out(inst_dir / name);
      if (!out) throw std::runtime_error("cannot open for writing: " + (inst_dir / name).string());
      out << report.drops[d].instance_json << "\n";
    }
  }
}

}  // namespace icsched
