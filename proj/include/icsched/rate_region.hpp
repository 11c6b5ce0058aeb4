// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "icsched/net_model.hpp"

namespace icsched {

// Capacity loss applied as a divisor on every SINR argument (2.0 = 3 dB).
inline constexpr double kDefaultLossFactor = 2.0;

// Absolute tolerance on rate comparisons at region boundaries.
inline constexpr double kFeasTol = 1e-12;

/// Per-link effective SINRs defining its feasible rate region. rho_int is
/// meaningful only when has_interferer is set; links without a dominant
/// interferer have a reuse-1 region only.
struct LinkRegionParams {
  double rho_reuse1 = 0.0;  // serving SINR, all interference in denominator
  double rho_serv = 0.0;    // serving SINR with dominant interferer removed
  double rho_int = 0.0;     // dominant interferer SINR at this receiver
  bool has_interferer = false;
  double loss_factor = kDefaultLossFactor;
};

// SINR treating all interference as noise: G_ii P_i / (sum_{k!=i} G_ik P_k + N_i).
double sinr_reuse1(const NetworkInstance& inst, int i);

// Joint-detection SINR of TX l at RX i with the dominant interferer excluded
// from the denominator. l must be i or sigma[i]; throws when sigma[i] is none.
double sinr_joint(const NetworkInstance& inst, int i, int l);

LinkRegionParams region_params(const NetworkInstance& inst, int i,
                               double loss_factor = kDefaultLossFactor);

// Shannon-style caps with the loss factor applied, log2(1 + rho/L).
double reuse1_cap(const LinkRegionParams& p);
double ic_serv_cap(const LinkRegionParams& p);
double ic_int_cap(const LinkRegionParams& p);
double ic_sum_cap(const LinkRegionParams& p);

// Whether the attempted rate pair lies in the union of the reuse-1 and
// joint-detection (MAC) regions. x_j is ignored for links without an
// interferer.
bool is_feasible(const LinkRegionParams& p, double x_i, double x_j);

// x_i when the pair is feasible, 0 otherwise.
double achieved_rate(const LinkRegionParams& p, double x_i, double x_j);

// Per-link drop to the largest grid rate <= the attempt that is feasible
// against the interferer's *unprojected* attempt. Local information only;
// always succeeds since rate 0 is feasible.
ScheduleVector project_feasible_schedule(const NetworkInstance& inst,
                                         const ScheduleVector& xhat,
                                         double loss_factor = kDefaultLossFactor);
std::vector<double> project_feasible(const NetworkInstance& inst,
                                     const ScheduleVector& xhat,
                                     double loss_factor = kDefaultLossFactor);

}  // namespace icsched
