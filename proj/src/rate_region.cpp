// SPDX-License-Identifier: Apache-2.0
#include "icsched/rate_region.hpp"

#include <cmath>
#include <stdexcept>

namespace icsched {

double sinr_reuse1(const NetworkInstance& inst, int i) {
  double denom = inst.noise[static_cast<std::size_t>(i)];
  for (int k = 0; k < inst.n; ++k)
    if (k != i) denom += inst.rx_power(i, k);
  return inst.rx_power(i, i) / denom;
}

double sinr_joint(const NetworkInstance& inst, int i, int l) {
  const int j = inst.sigma[static_cast<std::size_t>(i)];
  if (j == kNoInterferer)
    throw std::invalid_argument("no-dominant-interferer: link has no joint-detection SINR");
  if (l != i && l != j)
    throw std::invalid_argument("invalid-parameter: l must be the serving or dominant interfering TX");
  double denom = inst.noise[static_cast<std::size_t>(i)];
  for (int k = 0; k < inst.n; ++k)
    if (k != i && k != j) denom += inst.rx_power(i, k);
  return inst.rx_power(i, l) / denom;
}

LinkRegionParams region_params(const NetworkInstance& inst, int i, double loss_factor) {
  LinkRegionParams p;
  p.loss_factor = loss_factor;
  p.rho_reuse1 = sinr_reuse1(inst, i);
  if (inst.sigma[static_cast<std::size_t>(i)] != kNoInterferer) {
    p.has_interferer = true;
    p.rho_serv = sinr_joint(inst, i, i);
    p.rho_int = sinr_joint(inst, i, inst.sigma[static_cast<std::size_t>(i)]);
  } else {
    p.rho_serv = p.rho_reuse1;
  }
  return p;
}

double reuse1_cap(const LinkRegionParams& p) { return std::log2(1.0 + p.rho_reuse1 / p.loss_factor); }
double ic_serv_cap(const LinkRegionParams& p) { return std::log2(1.0 + p.rho_serv / p.loss_factor); }
double ic_int_cap(const LinkRegionParams& p) { return std::log2(1.0 + p.rho_int / p.loss_factor); }
double ic_sum_cap(const LinkRegionParams& p) {
  return std::log2(1.0 + (p.rho_serv + p.rho_int) / p.loss_factor);
}

bool is_feasible(const LinkRegionParams& p, double x_i, double x_j) {
  if (x_i <= reuse1_cap(p) + kFeasTol) return true;
  if (!p.has_interferer) return false;
  return x_i <= ic_serv_cap(p) + kFeasTol && x_j <= ic_int_cap(p) + kFeasTol &&
         x_i + x_j <= ic_sum_cap(p) + kFeasTol;
}

double achieved_rate(const LinkRegionParams& p, double x_i, double x_j) {
  return is_feasible(p, x_i, x_j) ? x_i : 0.0;
}

ScheduleVector project_feasible_schedule(const NetworkInstance& inst, const ScheduleVector& xhat,
                                         double loss_factor) {
  ScheduleVector out;
  out.idx.resize(xhat.idx.size());
  for (int i = 0; i < inst.n; ++i) {
    const LinkRegionParams p = region_params(inst, i, loss_factor);
    const int j = inst.sigma[static_cast<std::size_t>(i)];
    // The interferer's unprojected attempt: the projection needs no
    // coordination beyond the messages already exchanged.
    const double x_j = j == kNoInterferer ? 0.0 : inst.grid.value(xhat.idx[static_cast<std::size_t>(j)]);
    int a = xhat.idx[static_cast<std::size_t>(i)];
    while (a > 0 && !is_feasible(p, inst.grid.value(a), x_j)) --a;
    out.idx[static_cast<std::size_t>(i)] = a;
  }
  return out;
}

std::vector<double> project_feasible(const NetworkInstance& inst, const ScheduleVector& xhat,
                                     double loss_factor) {
  return schedule_rates(inst, project_feasible_schedule(inst, xhat, loss_factor));
}

}  // namespace icsched
