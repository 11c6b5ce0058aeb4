// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "icsched/net_model.hpp"

namespace icsched {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }

// Thermal floor (-174 dBm/Hz) over the bandwidth plus the noise figure.
double thermal_noise_dbm(double bandwidth_hz, double noise_figure_db);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class PathLossModel { Apartment, Road };

// Apartment: 38.46 + 20*log10(R) + 0.7*R dB. Road: 10 + 37*log10(R) dB.
// Distance is clamped to 1 m; wall losses (10 dB per wall in the apartment
// model, 0 in the road model) are added per crossed wall.
double path_loss_db(PathLossModel model, double distance_m, int walls_crossed = 0);

// Interior apartment-boundary lines crossed by the straight segment a-b on a
// rows x cols grid of square apartments with the given side length.
int walls_crossed(Point a, Point b, double apartment_size_m, int rows, int cols);

struct ApartmentConfig {
  int grid_rows = 4;
  int grid_cols = 4;
  double apartment_size_m = 10.0;
  int active_links = 10;
  double bandwidth_hz = 5e6;
  double wall_loss_db = 10.0;
  double shadow_std_db = 10.0;
  double tx_power_dbm = 0.0;
  double noise_figure_db = 4.0;
  int grid_points = 25;
  double max_rate_bps_hz = 5.0;
  double grid_min_rate_bps_hz = 0.05;  // lowest positive rate point
  double sigma_threshold_db = kDefaultSigmaThresholdDb;
};

struct RoadConfig {
  int n_links = 10;            // femto TXs and mobile RXs
  double road_width_m = 10.0;
  double period_m = 50.0;      // road wraps around at this length
  double apartment_width_m = 10.0;    // along the road
  double apartment_depth_m = 20.0;    // away from the road
  double femto_setback_max_m = 20.0;  // femto depth jitter behind the facade
  double bandwidth_hz = 5e6;
  double wall_loss_db = 0.0;
  double shadow_std_db = 10.0;
  double tx_power_dbm = 0.0;
  double noise_figure_db = 4.0;
  double velocity_min_mps = 15.0;
  double velocity_max_mps = 25.0;
  double drag_time_max_s = 1.0;
  int grid_points = 25;
  double max_rate_bps_hz = 5.0;
  // Handover-drag victims live far below the serving cell's nominal SINR;
  // the lowest positive rate point sits at 0.2% of the cap so their
  // post-cancellation rates stay representable.
  double grid_min_rate_bps_hz = 0.01;
  double sigma_threshold_db = kDefaultSigmaThresholdDb;
};

// Random small instances for solver certification. Off-diagonal gains are
// log-uniform over gain_span_db; serving gains over the upper half of that
// span.
struct SyntheticConfig {
  int n = 3;
  int grid_points = 10;
  double max_rate_bps_hz = 5.0;
  double gain_span_db = 40.0;
  double sigma_threshold_db = kDefaultSigmaThresholdDb;
};

struct GeometryRecord {
  std::string scenario;
  std::vector<Point> tx_pos;
  std::vector<Point> rx_pos;          // road: position after the drag
  std::vector<Point> rx_initial_pos;  // road: position at association time
  std::vector<int> apartment_of_link;  // apartment index per link, -1 if n/a
  std::vector<int> association;        // road: femto serving each mobile
  std::vector<int> sigma;
};

struct Drop {
  NetworkInstance instance;
  GeometryRecord geometry;
};

// 10 of 16 apartments drawn without replacement, one femto BS and one UE
// placed uniformly inside each (closed access). Lognormal shadowing is drawn
// i.i.d. per (TX, RX) pair and frozen for the drop.
Drop gen_apartment_drop(const ApartmentConfig& cfg, std::uint64_t seed);

// Femtos in apartments flanking one road period, mobiles uniform on the
// road. Each mobile associates with the strongest cell at its initial
// position, then drags v*tau meters (periodic wrap) before the gain
// snapshot; the association does not follow.
Drop gen_road_drop(const RoadConfig& cfg, std::uint64_t seed);

Drop gen_synthetic_drop(const SyntheticConfig& cfg, std::uint64_t seed);

// Geometry as a JSON document (positions, associations, sigma arrows).
std::string dump_geometry(const GeometryRecord& geo);

}  // namespace icsched
