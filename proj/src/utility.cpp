// SPDX-License-Identifier: Apache-2.0
#include "icsched/utility.hpp"

#include <cmath>
#include <stdexcept>

namespace icsched {

namespace {

void check_kind(const UtilityKind& kind) {
  if (kind.family == UtilityFamily::BetaFair && !(kind.beta > 0.0))
    throw std::invalid_argument("invalid-parameter: beta-fair utility requires beta > 0");
  if (kind.family == UtilityFamily::Weighted && (!(kind.weight >= 0.0) || !std::isfinite(kind.weight)))
    throw std::invalid_argument("invalid-parameter: weight must be finite and >= 0");
}

}  // namespace

double static_utility(const UtilityKind& kind, double rate) {
  check_kind(kind);
  switch (kind.family) {
    case UtilityFamily::SumRate:
      return rate;
    case UtilityFamily::Log:
      return rate > 0.0 ? std::log(rate) : kZeroRateUtility;
    case UtilityFamily::BetaFair:
      return rate > 0.0 ? -kind.beta * std::pow(rate, -kind.beta) : kZeroRateUtility;
    case UtilityFamily::Weighted:
      return kind.weight * rate;
  }
  return 0.0;
}

double marginal_weight(const UtilityKind& kind, double avg_rate) {
  check_kind(kind);
  const double r = std::max(avg_rate, kAvgRateFloor);
  switch (kind.family) {
    case UtilityFamily::SumRate:
      return 1.0;
    case UtilityFamily::Log:
      return 1.0 / r;
    case UtilityFamily::BetaFair:
      return kind.beta * kind.beta * std::pow(r, -kind.beta - 1.0);
    case UtilityFamily::Weighted:
      return kind.weight;
  }
  return 0.0;
}

double update_avg_rate(double avg, double sample, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("invalid-parameter: alpha must be in (0, 1]");
  return (1.0 - alpha) * avg + alpha * sample;
}

std::vector<UtilityTable> build_utility_tables(const NetworkInstance& inst,
                                               const std::vector<UtilityKind>& kinds,
                                               double loss_factor) {
  if (kinds.size() != static_cast<std::size_t>(inst.n))
    throw std::invalid_argument("dimension-mismatch: one utility kind per link");
  const int count = inst.grid.count();
  std::vector<UtilityTable> tables(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) {
    const LinkRegionParams p = region_params(inst, i, loss_factor);
    UtilityTable& t = tables[static_cast<std::size_t>(i)];
    t.link = i;
    t.count = count;
    t.has_interferer = p.has_interferer;
    if (t.has_interferer) {
      t.values.resize(static_cast<std::size_t>(count) * count);
      for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b)
          t.values[static_cast<std::size_t>(a) * count + b] = static_utility(
              kinds[static_cast<std::size_t>(i)],
              achieved_rate(p, inst.grid.value(a), inst.grid.value(b)));
    } else {
      t.values.resize(static_cast<std::size_t>(count));
      for (int a = 0; a < count; ++a)
        t.values[static_cast<std::size_t>(a)] = static_utility(
            kinds[static_cast<std::size_t>(i)], achieved_rate(p, inst.grid.value(a), 0.0));
    }
  }
  return tables;
}

std::vector<UtilityTable> build_utility_tables(const NetworkInstance& inst,
                                               const UtilityKind& kind, double loss_factor) {
  return build_utility_tables(inst, std::vector<UtilityKind>(static_cast<std::size_t>(inst.n), kind),
                              loss_factor);
}

double total_utility(const NetworkInstance& inst, const std::vector<UtilityTable>& tables,
                     const ScheduleVector& x) {
  double total = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    const int j = inst.sigma[static_cast<std::size_t>(i)];
    const int b = j == kNoInterferer ? 0 : x.idx[static_cast<std::size_t>(j)];
    total += tables[static_cast<std::size_t>(i)].at(x.idx[static_cast<std::size_t>(i)], b);
  }
  return total;
}

}  // namespace icsched
