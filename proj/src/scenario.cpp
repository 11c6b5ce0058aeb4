// SPDX-License-Identifier: Apache-2.0
#include "icsched/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "icsched/rng.hpp"

namespace icsched {

double thermal_noise_dbm(double bandwidth_hz, double noise_figure_db) {
  return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double path_loss_db(PathLossModel model, double distance_m, int walls_crossed) {
  const double d = std::max(distance_m, 1.0);
  switch (model) {
    case PathLossModel::Apartment:
      return 38.46 + 20.0 * std::log10(d) + 0.7 * d + 10.0 * walls_crossed;
    case PathLossModel::Road:
      return 10.0 + 37.0 * std::log10(d);  // road model walls cost 0 dB
  }
  return 0.0;
}

int walls_crossed(Point a, Point b, double apartment_size_m, int rows, int cols) {
  int crossings = 0;
  for (int c = 1; c < cols; ++c) {
    const double line = c * apartment_size_m;
    if ((a.x - line) * (b.x - line) < 0.0) ++crossings;
  }
  for (int r = 1; r < rows; ++r) {
    const double line = r * apartment_size_m;
    if ((a.y - line) * (b.y - line) < 0.0) ++crossings;
  }
  return crossings;
}

namespace {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Distance with minimum-image wrap along the road direction (x).
double wrapped_distance(Point a, Point b, double period) {
  double dx = std::fabs(a.x - b.x);
  dx = std::fmod(dx, period);
  dx = std::min(dx, period - dx);
  return std::hypot(dx, a.y - b.y);
}

}  // namespace

Drop gen_apartment_drop(const ApartmentConfig& cfg, std::uint64_t seed) {
  const int total_apts = cfg.grid_rows * cfg.grid_cols;
  if (cfg.active_links < 1 || cfg.active_links > total_apts)
    throw std::invalid_argument("invalid-parameter: active_links must be in [1, rows*cols]");

  Rng rng(seed);
  const int n = cfg.active_links;

  // Active apartments: partial Fisher-Yates over all apartment indices.
  std::vector<int> apts(static_cast<std::size_t>(total_apts));
  std::iota(apts.begin(), apts.end(), 0);
  for (int k = 0; k < n; ++k)
    std::swap(apts[static_cast<std::size_t>(k)],
              apts[static_cast<std::size_t>(k + rng.uniform_int(total_apts - k))]);
  apts.resize(static_cast<std::size_t>(n));

  // Closed access: one femto BS and one UE per active apartment.
  GeometryRecord geo;
  geo.scenario = "apartment";
  geo.apartment_of_link = apts;
  for (int k = 0; k < n; ++k) {
    const int apt = apts[static_cast<std::size_t>(k)];
    const double x0 = (apt % cfg.grid_cols) * cfg.apartment_size_m;
    const double y0 = (apt / cfg.grid_cols) * cfg.apartment_size_m;
    geo.tx_pos.push_back({x0 + rng.uniform() * cfg.apartment_size_m,
                          y0 + rng.uniform() * cfg.apartment_size_m});
    geo.rx_pos.push_back({x0 + rng.uniform() * cfg.apartment_size_m,
                          y0 + rng.uniform() * cfg.apartment_size_m});
  }

  // Shadowing is i.i.d. per (TX, RX) pair and frozen for the drop.
  std::vector<double> gains(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Point rx = geo.rx_pos[static_cast<std::size_t>(i)];
      const Point tx = geo.tx_pos[static_cast<std::size_t>(j)];
      const int walls = walls_crossed(rx, tx, cfg.apartment_size_m, cfg.grid_rows, cfg.grid_cols);
      const double d = std::max(distance(rx, tx), 1.0);
      const double pl = 38.46 + 20.0 * std::log10(d) + 0.7 * d + cfg.wall_loss_db * walls;
      const double shadow = rng.normal(0.0, cfg.shadow_std_db);
      gains[static_cast<std::size_t>(i) * n + j] = db_to_linear(-pl + shadow);
    }
  }

  const double p_mw = db_to_linear(cfg.tx_power_dbm);
  const double n_mw = db_to_linear(thermal_noise_dbm(cfg.bandwidth_hz, cfg.noise_figure_db));
  const std::vector<double> powers(static_cast<std::size_t>(n), p_mw);
  const std::vector<double> noise(static_cast<std::size_t>(n), n_mw);
  const std::vector<int> sigma =
      select_dominant_interferers(gains, powers, noise, cfg.sigma_threshold_db);
  geo.sigma = sigma;

  Drop drop;
  drop.instance = build_instance(
      gains, powers, noise, sigma,
      make_rate_grid(cfg.grid_points, cfg.max_rate_bps_hz, cfg.grid_min_rate_bps_hz));
  drop.geometry = std::move(geo);
  return drop;
}

Drop gen_road_drop(const RoadConfig& cfg, std::uint64_t seed) {
  const int n = cfg.n_links;
  if (n < 2) throw std::invalid_argument("invalid-parameter: road model needs >= 2 links");

  Rng rng(seed);
  GeometryRecord geo;
  geo.scenario = "road";
  geo.apartment_of_link.assign(static_cast<std::size_t>(n), -1);

  // Femtos in apartments flanking the road, half per side, jittered along
  // their apartment and kept near the road-facing wall. Side A sits below
  // the road (y < 0), side B above.
  const int side_a = n / 2;
  const double setback = std::min(cfg.femto_setback_max_m, cfg.apartment_depth_m);
  std::vector<Point> femto(static_cast<std::size_t>(n));
  for (int f = 0; f < n; ++f) {
    const bool below = f < side_a;
    const int slot = below ? f : f - side_a;
    const double x = std::fmod(slot * cfg.apartment_width_m + rng.uniform() * cfg.apartment_width_m,
                               cfg.period_m);
    const double depth = rng.uniform() * setback;
    femto[static_cast<std::size_t>(f)] = {x, below ? -depth : cfg.road_width_m + depth};
  }

  std::vector<Point> mobile(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m)
    mobile[static_cast<std::size_t>(m)] = {rng.uniform() * cfg.period_m,
                                           rng.uniform() * cfg.road_width_m};

  std::vector<double> shadow(static_cast<std::size_t>(n) * n);
  for (double& s : shadow) s = rng.normal(0.0, cfg.shadow_std_db);

  const auto gain_db = [&](int m, int f, const std::vector<Point>& mob) {
    const double d = wrapped_distance(mob[static_cast<std::size_t>(m)],
                                      femto[static_cast<std::size_t>(f)], cfg.period_m);
    return -(10.0 + 37.0 * std::log10(std::max(d, 1.0))) + shadow[static_cast<std::size_t>(m) * n + f];
  };

  // Strongest-cell association at the initial positions. Collisions are
  // resolved by a global greedy pass so femtos and mobiles stay paired
  // one-to-one: strongest unassigned (mobile, femto) pair first.
  std::vector<int> assoc(static_cast<std::size_t>(n), -1);
  std::vector<bool> femto_taken(static_cast<std::size_t>(n), false);
  for (int round = 0; round < n; ++round) {
    int best_m = -1, best_f = -1;
    double best_db = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < n; ++m) {
      if (assoc[static_cast<std::size_t>(m)] >= 0) continue;
      for (int f = 0; f < n; ++f) {
        if (femto_taken[static_cast<std::size_t>(f)]) continue;
        const double g = gain_db(m, f, mobile);
        if (g > best_db) {
          best_db = g;
          best_m = m;
          best_f = f;
        }
      }
    }
    assoc[static_cast<std::size_t>(best_m)] = best_f;
    femto_taken[static_cast<std::size_t>(best_f)] = true;
  }

  // Handover drag: mobiles advance v*tau along the road with periodic wrap;
  // the association stays where it was.
  std::vector<Point> final_pos = mobile;
  for (int m = 0; m < n; ++m) {
    const double v = rng.uniform(cfg.velocity_min_mps, cfg.velocity_max_mps);
    const double tau = rng.uniform() * cfg.drag_time_max_s;
    final_pos[static_cast<std::size_t>(m)].x =
        std::fmod(final_pos[static_cast<std::size_t>(m)].x + v * tau, cfg.period_m);
  }

  // Link j transmits from the femto serving mobile j.
  std::vector<double> gains(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gains[static_cast<std::size_t>(i) * n + j] =
          db_to_linear(gain_db(i, assoc[static_cast<std::size_t>(j)], final_pos));

  const double p_mw = db_to_linear(cfg.tx_power_dbm);
  const double n_mw = db_to_linear(thermal_noise_dbm(cfg.bandwidth_hz, cfg.noise_figure_db));
  const std::vector<double> powers(static_cast<std::size_t>(n), p_mw);
  const std::vector<double> noise(static_cast<std::size_t>(n), n_mw);
  const std::vector<int> sigma =
      select_dominant_interferers(gains, powers, noise, cfg.sigma_threshold_db);

  geo.tx_pos.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    geo.tx_pos[static_cast<std::size_t>(j)] = femto[static_cast<std::size_t>(assoc[static_cast<std::size_t>(j)])];
  geo.rx_pos = final_pos;
  geo.rx_initial_pos = mobile;
  geo.association = assoc;
  geo.sigma = sigma;

  Drop drop;
  drop.instance = build_instance(
      gains, powers, noise, sigma,
      make_rate_grid(cfg.grid_points, cfg.max_rate_bps_hz, cfg.grid_min_rate_bps_hz));
  drop.geometry = std::move(geo);
  return drop;
}

Drop gen_synthetic_drop(const SyntheticConfig& cfg, std::uint64_t seed) {
  if (cfg.n < 1) throw std::invalid_argument("invalid-parameter: need n >= 1");
  Rng rng(seed);
  const int n = cfg.n;
  std::vector<double> gains(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double lo = i == j ? -cfg.gain_span_db / 2.0 : -cfg.gain_span_db;
      gains[static_cast<std::size_t>(i) * n + j] = db_to_linear(rng.uniform(lo, 0.0));
    }
  std::vector<double> noise(static_cast<std::size_t>(n));
  for (double& v : noise) v = db_to_linear(rng.uniform(-cfg.gain_span_db, -cfg.gain_span_db / 4.0));
  const std::vector<double> powers(static_cast<std::size_t>(n), 1.0);
  const std::vector<int> sigma =
      select_dominant_interferers(gains, powers, noise, cfg.sigma_threshold_db);

  GeometryRecord geo;
  geo.scenario = "synthetic";
  geo.sigma = sigma;

  Drop drop;
  drop.instance = build_instance(
      gains, powers, noise, sigma,
      make_rate_grid(cfg.grid_points, cfg.max_rate_bps_hz, 0.01 * cfg.max_rate_bps_hz));
  drop.geometry = std::move(geo);
  return drop;
}

std::string dump_geometry(const GeometryRecord& geo) {
  nlohmann::json j;
  j["scenario"] = geo.scenario;
  auto points = [](const std::vector<Point>& ps) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Point& p : ps) arr.push_back({p.x, p.y});
    return arr;
  };
  j["tx_pos"] = points(geo.tx_pos);
  j["rx_pos"] = points(geo.rx_pos);
  if (!geo.rx_initial_pos.empty()) j["rx_initial_pos"] = points(geo.rx_initial_pos);
  j["apartment_of_link"] = geo.apartment_of_link;
  j["association"] = geo.association;
  std::vector<int> sigma1(geo.sigma.size());
  for (std::size_t i = 0; i < geo.sigma.size(); ++i)
    sigma1[i] = geo.sigma[i] == kNoInterferer ? 0 : geo.sigma[i] + 1;
  j["sigma"] = sigma1;
  return j.dump(2);
}

}  // namespace icsched
