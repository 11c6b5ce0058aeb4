// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace icsched {

// Link i has no dominant interferer.
inline constexpr int kNoInterferer = -1;

// Received interference more than this many dB below the receiver noise floor
// does not count as a dominant interferer.
inline constexpr double kDefaultSigmaThresholdDb = 20.0;

/// Ordered discrete set of attempted spectral efficiencies (bps/Hz), shared
/// by all links. points[0] is always 0 ("stay silent"); the remaining points
/// are geometrically spaced up to the maximum spectral efficiency.
struct RateGrid {
  std::vector<double> points;

  int count() const { return static_cast<int>(points.size()); }
  double value(int idx) const { return points[static_cast<std::size_t>(idx)]; }
  double max_rate() const { return points.back(); }

  // Largest index whose rate is <= r (within tol). Returns 0 when only the
  // zero rate qualifies.
  int largest_index_leq(double r, double tol = 1e-12) const;

  bool operator==(const RateGrid&) const = default;
};

RateGrid make_rate_grid(int count, double r_max, double r_min_pos);

/// One network drop: linear power gains, TX powers, noise, the dominant
/// interferer map and the shared rate grid. Immutable after construction;
/// every later operation treats it as read-only.
struct NetworkInstance {
  int n = 0;
  std::vector<double> gains;   // row-major n*n, gains[i*n+j] = gain TX j -> RX i
  std::vector<double> powers;  // linear TX power per link
  std::vector<double> noise;   // linear noise power per receiver
  std::vector<int> sigma;      // dominant interferer per link, kNoInterferer if none
  RateGrid grid;

  double gain(int i, int j) const {
    return gains[static_cast<std::size_t>(i) * n + j];
  }
  // Received power at RX i from TX j.
  double rx_power(int i, int j) const { return gain(i, j) * powers[j]; }

  bool operator==(const NetworkInstance&) const = default;
};

/// Attempted rate per link, stored as indices into the shared grid.
struct ScheduleVector {
  std::vector<int> idx;

  int size() const { return static_cast<int>(idx.size()); }
  bool operator==(const ScheduleVector&) const = default;
};

std::vector<double> schedule_rates(const NetworkInstance& inst, const ScheduleVector& x);

// sigma[i] = argmax over j != i of received interference power G_ij * P_j,
// ties broken by lowest j; kNoInterferer when even the strongest interferer
// is more than threshold_db below the noise floor N_i.
std::vector<int> select_dominant_interferers(const std::vector<double>& gains,
                                             const std::vector<double>& powers,
                                             const std::vector<double>& noise,
                                             double threshold_db = kDefaultSigmaThresholdDb);

// Validates dimensions and invariants (positivity, sigma[i] != i, index
// ranges) and assembles the instance.
NetworkInstance build_instance(const std::vector<double>& gains,
                               const std::vector<double>& powers,
                               const std::vector<double>& noise,
                               const std::vector<int>& sigma,
                               const RateGrid& grid);

// JSON document with fields n, gains (row-major, linear), powers, noise,
// sigma (1-based, 0 = none) and grid points.
std::string dump_instance(const NetworkInstance& inst);
NetworkInstance parse_instance(const std::string& text);
void save_instance(const NetworkInstance& inst, const std::string& path);
NetworkInstance load_instance(const std::string& path);

}  // namespace icsched
