// SPDX-License-Identifier: Apache-2.0
#include "icsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "icsched/rate_region.hpp"

namespace icsched {

OracleResult exhaustive_optimum(const NetworkInstance& inst,
                                const std::vector<UtilityTable>& tables) {
  const int count = inst.grid.count();
  if (static_cast<double>(inst.n) * std::log(count) > std::log(kOracleMaxPoints))
    throw std::runtime_error("instance-too-large: grid.count^n exceeds the enumeration cap");

  OracleResult result;
  result.best.idx.assign(static_cast<std::size_t>(inst.n), 0);

  ScheduleVector x;
  x.idx.assign(static_cast<std::size_t>(inst.n), 0);
  double best = total_utility(inst, tables, x);
  std::vector<int> best_idx = x.idx;
  std::uint64_t evaluated = 1;

  // Odometer over link indices, link 0 fastest. Among equal maxima the
  // lexicographically smallest index vector wins.
  while (true) {
    int d = 0;
    while (d < inst.n && ++x.idx[static_cast<std::size_t>(d)] == count) {
      x.idx[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == inst.n) break;
    ++evaluated;
    const double f = total_utility(inst, tables, x);
    if (f > best || (f == best && std::lexicographical_compare(x.idx.begin(), x.idx.end(),
                                                               best_idx.begin(), best_idx.end()))) {
      best = f;
      best_idx = x.idx;
    }
  }

  result.best.idx = best_idx;
  result.best_utility = best;
  result.points_evaluated = evaluated;
  return result;
}

CompareReport compare_bp_to_oracle(const NetworkInstance& inst,
                                   const std::vector<UtilityTable>& tables,
                                   const RunOptions& opts, double loss_factor) {
  const OracleResult oracle = exhaustive_optimum(inst, tables);
  const BPResult bp = run_max_sum(inst, tables, opts);
  const ScheduleVector projected = project_feasible_schedule(inst, bp.decisions, loss_factor);

  CompareReport report;
  report.bp_utility = total_utility(inst, tables, projected);
  report.oracle_utility = oracle.best_utility;
  report.gap = report.oracle_utility - report.bp_utility;
  report.converged = bp.converged;
  report.iterations_used = bp.iterations_used;
  return report;
}

}  // namespace icsched
