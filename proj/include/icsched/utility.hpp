// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "icsched/net_model.hpp"
#include "icsched/rate_region.hpp"

namespace icsched {

// Finite stand-in for U(0) = -inf under log and beta-fair utilities. Large
// enough to be additively absorbing in any max comparison while keeping
// message arithmetic finite.
inline constexpr double kZeroRateUtility = -1e9;

// Average rates are floored here before computing marginal weights.
inline constexpr double kAvgRateFloor = 1e-3;

enum class UtilityFamily { SumRate, Log, BetaFair, Weighted };

struct UtilityKind {
  UtilityFamily family = UtilityFamily::SumRate;
  double beta = 1.0;    // BetaFair only
  double weight = 1.0;  // Weighted only

  static UtilityKind sum_rate() { return {UtilityFamily::SumRate, 1.0, 1.0}; }
  static UtilityKind log() { return {UtilityFamily::Log, 1.0, 1.0}; }
  static UtilityKind beta_fair(double beta) { return {UtilityFamily::BetaFair, beta, 1.0}; }
  static UtilityKind weighted(double w) { return {UtilityFamily::Weighted, 1.0, w}; }
};

// U(R). SumRate: R; Log: ln R (natural log, base is argmax-invariant);
// BetaFair: -beta * R^(-beta); Weighted: w * R. Log and BetaFair return the
// zero-rate sentinel at R = 0.
double static_utility(const UtilityKind& kind, double rate);

// dU/dR evaluated at max(avg_rate, kAvgRateFloor).
double marginal_weight(const UtilityKind& kind, double avg_rate);

// Exponentially weighted average: (1 - alpha) * avg + alpha * sample.
double update_avg_rate(double avg, double sample, double alpha);

/// Utility of link i over the joint rate grid:
/// at(a, b) = U_i(achieved_rate(params_i, grid[a], grid[b])). Links without a
/// dominant interferer store a single column (b is ignored).
struct UtilityTable {
  int link = 0;
  int count = 0;
  bool has_interferer = false;
  std::vector<double> values;  // count*count row-major, or count when no interferer

  double at(int a, int b) const {
    return has_interferer ? values[static_cast<std::size_t>(a) * count + b]
                          : values[static_cast<std::size_t>(a)];
  }
};

std::vector<UtilityTable> build_utility_tables(const NetworkInstance& inst,
                                               const std::vector<UtilityKind>& kinds,
                                               double loss_factor = kDefaultLossFactor);
std::vector<UtilityTable> build_utility_tables(const NetworkInstance& inst,
                                               const UtilityKind& kind,
                                               double loss_factor = kDefaultLossFactor);

// Sum of table entries at the given joint schedule.
double total_utility(const NetworkInstance& inst,
                     const std::vector<UtilityTable>& tables,
                     const ScheduleVector& x);

}  // namespace icsched
