// SPDX-License-Identifier: Apache-2.0
#include "icsched/maxsum.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace icsched {

namespace {

// Victims of TX j: links whose dominant interferer is j.
std::vector<std::vector<int>> victim_lists(const NetworkInstance& inst) {
  std::vector<std::vector<int>> victims(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) {
    const int j = inst.sigma[static_cast<std::size_t>(i)];
    if (j != kNoInterferer) victims[static_cast<std::size_t>(j)].push_back(i);
  }
  return victims;
}

void normalize(std::vector<double>& table) {
  const double m = *std::max_element(table.begin(), table.end());
  for (double& v : table) v -= m;
}

// One receiver pass: factor-to-variable max-sum updates, normalized.
void receiver_pass(const MessageState& state, const NetworkInstance& inst,
                   const std::vector<UtilityTable>& tables,
                   std::vector<std::vector<double>>& out_self,
                   std::vector<std::vector<double>>& out_interf) {
  const int count = inst.grid.count();
  for (int i = 0; i < inst.n; ++i) {
    const UtilityTable& f = tables[static_cast<std::size_t>(i)];
    const int j = inst.sigma[static_cast<std::size_t>(i)];
    auto& to_serv = out_self[static_cast<std::size_t>(i)];
    if (j == kNoInterferer) {
      for (int a = 0; a < count; ++a) to_serv[static_cast<std::size_t>(a)] = f.at(a, 0);
      normalize(to_serv);
      continue;
    }
    const auto& in_serv = state.tx_to_rx_self[static_cast<std::size_t>(i)];
    const auto& in_interf = state.tx_to_rx_interf[static_cast<std::size_t>(i)];
    auto& to_interf = out_interf[static_cast<std::size_t>(i)];
    for (int a = 0; a < count; ++a) {
      double best = -std::numeric_limits<double>::infinity();
      for (int b = 0; b < count; ++b)
        best = std::max(best, f.at(a, b) + in_interf[static_cast<std::size_t>(b)]);
      to_serv[static_cast<std::size_t>(a)] = best;
    }
    for (int b = 0; b < count; ++b) {
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < count; ++a)
        best = std::max(best, f.at(a, b) + in_serv[static_cast<std::size_t>(a)]);
      to_interf[static_cast<std::size_t>(b)] = best;
    }
    normalize(to_serv);
    normalize(to_interf);
  }
}

// Damped commit. Both the old table and the committed result carry max
// entry 0, so the delta is already compensated for the normalization shift
// and a stationary message set reports exactly 0.
double commit(std::vector<double>& table, const std::vector<double>& raw, double damping) {
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < table.size(); ++k)
    shift = std::max(shift, (1.0 - damping) * table[k] + damping * raw[k]);
  double delta = 0.0;
  for (std::size_t k = 0; k < table.size(); ++k) {
    const double next = (1.0 - damping) * table[k] + damping * raw[k] - shift;
    delta = std::max(delta, std::abs(next - table[k]));
    table[k] = next;
  }
  return delta;
}

}  // namespace

MessageState init_messages(const NetworkInstance& inst) {
  MessageState state;
  const std::vector<double> zero(static_cast<std::size_t>(inst.grid.count()), 0.0);
  state.tx_to_rx_self.assign(static_cast<std::size_t>(inst.n), zero);
  state.tx_to_rx_interf.assign(static_cast<std::size_t>(inst.n), zero);
  state.rx_to_tx_self.assign(static_cast<std::size_t>(inst.n), zero);
  state.rx_to_tx_interf.assign(static_cast<std::size_t>(inst.n), zero);
  return state;
}

void receiver_half_round(MessageState& state, const NetworkInstance& inst,
                         const std::vector<UtilityTable>& tables) {
  // Reads only TX->RX tables, writes only RX->TX tables: per-link updates
  // are independent of ordering within the half round.
  receiver_pass(state, inst, tables, state.rx_to_tx_self, state.rx_to_tx_interf);
}

double transmitter_half_round(MessageState& state, const NetworkInstance& inst, double damping) {
  if (!(damping > 0.0) || damping > 1.0)
    throw std::invalid_argument("invalid-parameter: damping must be in (0, 1]");
  const int count = inst.grid.count();
  const auto victims = victim_lists(inst);
  std::vector<double> belief(static_cast<std::size_t>(count));
  std::vector<double> raw(static_cast<std::size_t>(count));
  double max_delta = 0.0;
  for (int j = 0; j < inst.n; ++j) {
    const auto& from_own_rx = state.rx_to_tx_self[static_cast<std::size_t>(j)];
    for (int b = 0; b < count; ++b) {
      double h = from_own_rx[static_cast<std::size_t>(b)];
      for (int i : victims[static_cast<std::size_t>(j)])
        h += state.rx_to_tx_interf[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
      belief[static_cast<std::size_t>(b)] = h;
    }
    for (int b = 0; b < count; ++b)
      raw[static_cast<std::size_t>(b)] = belief[static_cast<std::size_t>(b)] - from_own_rx[static_cast<std::size_t>(b)];
    max_delta = std::max(max_delta, commit(state.tx_to_rx_self[static_cast<std::size_t>(j)], raw, damping));
    for (int i : victims[static_cast<std::size_t>(j)]) {
      const auto& from_victim = state.rx_to_tx_interf[static_cast<std::size_t>(i)];
      for (int b = 0; b < count; ++b)
        raw[static_cast<std::size_t>(b)] = belief[static_cast<std::size_t>(b)] - from_victim[static_cast<std::size_t>(b)];
      max_delta = std::max(max_delta, commit(state.tx_to_rx_interf[static_cast<std::size_t>(i)], raw, damping));
    }
  }
  state.last_max_delta = max_delta;
  return max_delta;
}

std::vector<std::vector<double>> compute_beliefs(const MessageState& state,
                                                 const NetworkInstance& inst,
                                                 const std::vector<UtilityTable>& tables) {
  const std::vector<double> zero(static_cast<std::size_t>(inst.grid.count()), 0.0);
  std::vector<std::vector<double>> fresh_self(static_cast<std::size_t>(inst.n), zero);
  std::vector<std::vector<double>> fresh_interf(static_cast<std::size_t>(inst.n), zero);
  receiver_pass(state, inst, tables, fresh_self, fresh_interf);

  const auto victims = victim_lists(inst);
  std::vector<std::vector<double>> beliefs(static_cast<std::size_t>(inst.n), zero);
  for (int j = 0; j < inst.n; ++j) {
    auto& h = beliefs[static_cast<std::size_t>(j)];
    h = fresh_self[static_cast<std::size_t>(j)];
    for (int i : victims[static_cast<std::size_t>(j)])
      for (std::size_t b = 0; b < h.size(); ++b)
        h[b] += fresh_interf[static_cast<std::size_t>(i)][b];
  }
  return beliefs;
}

namespace {

// Beliefs tie exactly at many fixed points (rate-sum collisions and
// feasibility plateaus), and independent per-link argmax can then pick a
// jointly inconsistent schedule. Ties are resolved against the actual
// factors: within each graph component, the schedule is optimized exactly
// over the interval hull of every link's tie set. The hull matters on odd
// cycles, where tied beliefs bracket the consistent middle value.
constexpr double kDecodeTieTol = 1e-5;
constexpr std::uint64_t kDecodeBudget = 200000;

double component_utility(const NetworkInstance& inst, const std::vector<UtilityTable>& tables,
                         const std::vector<int>& members, const std::vector<int>& x) {
  double total = 0.0;
  for (int i : members) {
    const int j = inst.sigma[static_cast<std::size_t>(i)];
    const int b = j == kNoInterferer ? 0 : x[static_cast<std::size_t>(j)];
    total += tables[static_cast<std::size_t>(i)].at(x[static_cast<std::size_t>(i)], b);
  }
  return total;
}

}  // namespace

ScheduleVector decide(const MessageState& state, const NetworkInstance& inst,
                      const std::vector<UtilityTable>& tables) {
  const auto beliefs = compute_beliefs(state, inst, tables);
  const int count = inst.grid.count();

  std::vector<int> lo(static_cast<std::size_t>(inst.n)), hi(static_cast<std::size_t>(inst.n));
  ScheduleVector x;
  x.idx.resize(static_cast<std::size_t>(inst.n));
  for (int j = 0; j < inst.n; ++j) {
    const auto& h = beliefs[static_cast<std::size_t>(j)];
    int best = 0;
    for (int b = 1; b < count; ++b)
      if (h[static_cast<std::size_t>(b)] > h[static_cast<std::size_t>(best)]) best = b;
    int first = best, last = best;
    for (int b = 0; b < count; ++b) {
      if (h[static_cast<std::size_t>(b)] >= h[static_cast<std::size_t>(best)] - kDecodeTieTol) {
        first = std::min(first, b);
        last = std::max(last, b);
      }
    }
    lo[static_cast<std::size_t>(j)] = first;
    hi[static_cast<std::size_t>(j)] = last;
    x.idx[static_cast<std::size_t>(j)] = best;  // lowest index among exact ties
  }

  // Components of the interference graph (links coupled through sigma).
  std::vector<int> root(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) root[static_cast<std::size_t>(i)] = i;
  const auto find = [&root](int v) {
    while (root[static_cast<std::size_t>(v)] != v) v = root[static_cast<std::size_t>(v)] = root[static_cast<std::size_t>(root[static_cast<std::size_t>(v)])];
    return v;
  };
  for (int i = 0; i < inst.n; ++i)
    if (inst.sigma[static_cast<std::size_t>(i)] != kNoInterferer)
      root[static_cast<std::size_t>(find(i))] = find(inst.sigma[static_cast<std::size_t>(i)]);
  std::vector<std::vector<int>> components(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) components[static_cast<std::size_t>(find(i))].push_back(i);

  for (const auto& members : components) {
    if (members.empty()) continue;
    std::uint64_t product = 1;
    bool tied = false;
    for (int i : members) {
      const std::uint64_t span =
          static_cast<std::uint64_t>(hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)] + 1);
      tied = tied || span > 1;
      if (product > kDecodeBudget / span) {
        product = kDecodeBudget + 1;
        break;
      }
      product *= span;
    }
    if (!tied || product > kDecodeBudget) continue;  // plain argmax stands

    std::vector<int> cand = x.idx;
    for (int i : members) cand[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)];
    std::vector<int> best_cand = cand;
    double best_f = component_utility(inst, tables, members, cand);
    while (true) {
      std::size_t d = 0;
      while (d < members.size()) {
        int& v = cand[static_cast<std::size_t>(members[d])];
        if (++v <= hi[static_cast<std::size_t>(members[d])]) break;
        v = lo[static_cast<std::size_t>(members[d])];
        ++d;
      }
      if (d == members.size()) break;
      const double f = component_utility(inst, tables, members, cand);
      if (f > best_f) {
        best_f = f;
        best_cand = cand;
      }
    }
    for (int i : members) x.idx[static_cast<std::size_t>(i)] = best_cand[static_cast<std::size_t>(i)];
  }
  return x;
}

BPResult run_max_sum(const NetworkInstance& inst, const std::vector<UtilityTable>& tables,
                     const RunOptions& opts) {
  if (opts.max_iters < 1) throw std::invalid_argument("invalid-parameter: max_iters must be >= 1");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("invalid-parameter: tol must be positive");
  if (tables.size() != static_cast<std::size_t>(inst.n))
    throw std::invalid_argument("dimension-mismatch: one utility table per link");

  MessageState state = init_messages(inst);
  BPResult result;
  for (int round = 1; round <= opts.max_iters; ++round) {
    receiver_half_round(state, inst, tables);
    const double delta = transmitter_half_round(state, inst, opts.damping);
    state.iteration = round;
    result.iterations_used = round;
    if (opts.trace) {
      const ScheduleVector x = decide(state, inst, tables);
      *opts.trace << "iter=" << round << " max_delta=" << delta << " decisions=";
      for (int i = 0; i < x.size(); ++i)
        *opts.trace << (i ? "," : "") << x.idx[static_cast<std::size_t>(i)];
      *opts.trace << "\n";
    }
    if (delta < opts.tol) {
      result.converged = true;
      break;
    }
  }
  if (result.converged) {
    // Passing tol leaves the messages O(tol) away from the fixed point,
    // which still drowns the tie tilt at decode time. Polish the remaining
    // distance off before extracting decisions; the reported iteration
    // count stays the round that met tol.
    for (int extra = 0; extra < 100 && state.last_max_delta > 1e-13; ++extra) {
      receiver_half_round(state, inst, tables);
      transmitter_half_round(state, inst, opts.damping);
    }
  }
  result.beliefs = compute_beliefs(state, inst, tables);
  result.decisions = decide(state, inst, tables);
  return result;
}

}  // namespace icsched
