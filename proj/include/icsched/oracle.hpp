// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "icsched/maxsum.hpp"
#include "icsched/net_model.hpp"
#include "icsched/utility.hpp"

namespace icsched {

// Exhaustive enumeration refuses joint spaces above this size.
inline constexpr double kOracleMaxPoints = 1e8;

struct OracleResult {
  ScheduleVector best;
  double best_utility = 0.0;
  std::uint64_t points_evaluated = 0;
};

// Exact argmax of the summed utility tables over every joint grid point.
// Enumeration runs as an odometer with link 0 fastest; among equal maxima the
// lexicographically smallest index vector is kept. Throws when
// grid.count^n exceeds kOracleMaxPoints.
OracleResult exhaustive_optimum(const NetworkInstance& inst,
                                const std::vector<UtilityTable>& tables);

struct CompareReport {
  double bp_utility = 0.0;      // projected BP decisions on the same tables
  double oracle_utility = 0.0;
  double gap = 0.0;             // oracle - bp, >= 0
  bool converged = false;
  int iterations_used = 0;
};

// Runs the max-sum scheduler, projects its decisions to feasibility, and
// scores both solutions on identical utility tables. loss_factor must match
// the one the tables were built with.
CompareReport compare_bp_to_oracle(const NetworkInstance& inst,
                                   const std::vector<UtilityTable>& tables,
                                   const RunOptions& opts = {},
                                   double loss_factor = 2.0);

}  // namespace icsched
