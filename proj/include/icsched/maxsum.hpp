// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include "icsched/net_model.hpp"
#include "icsched/utility.hpp"

namespace icsched {

/// All message tables of the max-sum scheduler, named from the receiver's
/// point of view. For link i with interferer j = sigma[i]:
///   tx_to_rx_self[i]   = mu_{i->i}   (own TX to RX i)
///   tx_to_rx_interf[i] = mu_{j->i}   (interfering TX to RX i)
///   rx_to_tx_self[i]   = mu_{i<-i}   (RX i back to its own TX)
///   rx_to_tx_interf[i] = mu_{j<-i}   (RX i to the interfering TX)
/// Tables are value vectors over the rate grid and are kept normalized so
/// their maximum entry is 0.
struct MessageState {
  std::vector<std::vector<double>> tx_to_rx_self;
  std::vector<std::vector<double>> tx_to_rx_interf;
  std::vector<std::vector<double>> rx_to_tx_self;
  std::vector<std::vector<double>> rx_to_tx_interf;
  int iteration = 0;
  double last_max_delta = std::numeric_limits<double>::infinity();
};

struct BPResult {
  ScheduleVector decisions;
  bool converged = false;
  int iterations_used = 0;
  std::vector<std::vector<double>> beliefs;  // H_j over the grid, per link
};

struct RunOptions {
  int max_iters = 100;
  double damping = 0.5;  // 1.0 reproduces the undamped update
  double tol = 1e-6;     // convergence threshold on the per-round max delta
  std::ostream* trace = nullptr;
};

// All TX->RX tables identically zero.
MessageState init_messages(const NetworkInstance& inst);

// RX i maximizes its factor plus the incoming TX message over the other
// argument; each outgoing table is normalized afterwards.
void receiver_half_round(MessageState& state, const NetworkInstance& inst,
                         const std::vector<UtilityTable>& tables);

// TX j combines its received tables into the belief H_j, subtracts the
// addressee's own contribution, and commits damped normalized updates.
// Returns the round's max message delta (normalization-compensated).
double transmitter_half_round(MessageState& state, const NetworkInstance& inst, double damping);

// Beliefs recomputed from a fresh receiver pass over the current TX->RX
// tables, exactly the final-decision block of the message-passing schedule.
std::vector<std::vector<double>> compute_beliefs(const MessageState& state,
                                                 const NetworkInstance& inst,
                                                 const std::vector<UtilityTable>& tables);

// Per-link argmax of the beliefs; ties resolve to the lowest grid index.
ScheduleVector decide(const MessageState& state, const NetworkInstance& inst,
                      const std::vector<UtilityTable>& tables);

// Alternates receiver and transmitter half rounds until the max delta drops
// below tol or max_iters rounds have run. Deterministic given inputs. Note
// that pre-convergence decisions may be infeasible; callers evaluate them
// through the feasibility projection.
BPResult run_max_sum(const NetworkInstance& inst, const std::vector<UtilityTable>& tables,
                     const RunOptions& opts = {});

}  // namespace icsched
