// SPDX-License-Identifier: Apache-2.0
#include "icsched/net_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace icsched {

int RateGrid::largest_index_leq(double r, double tol) const {
  int best = 0;
  for (int k = 1; k < count(); ++k) {
    if (points[static_cast<std::size_t>(k)] <= r + tol) best = k;
  }
  return best;
}

RateGrid make_rate_grid(int count, double r_max, double r_min_pos) {
  if (count < 2) throw std::invalid_argument("invalid-parameter: rate grid needs count >= 2");
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw std::invalid_argument("invalid-parameter: r_max must be positive and finite");
  if (!(r_min_pos > 0.0) || r_min_pos > r_max)
    throw std::invalid_argument("invalid-parameter: need 0 < r_min_pos <= r_max");
  if (count > 2 && r_min_pos == r_max)
    throw std::invalid_argument("invalid-parameter: r_min_pos must be < r_max for count > 2");

  RateGrid grid;
  grid.points.resize(static_cast<std::size_t>(count));
  grid.points[0] = 0.0;
  if (count == 2) {
    grid.points[1] = r_max;
    return grid;
  }
  // count-1 geometric points from r_min_pos to r_max inclusive.
  const double ratio = std::pow(r_max / r_min_pos, 1.0 / (count - 2));
  grid.points[1] = r_min_pos;
  for (int k = 2; k < count - 1; ++k)
    grid.points[static_cast<std::size_t>(k)] = r_min_pos * std::pow(ratio, k - 1);
  grid.points[static_cast<std::size_t>(count - 1)] = r_max;
  return grid;
}

std::vector<double> schedule_rates(const NetworkInstance& inst, const ScheduleVector& x) {
  std::vector<double> rates(x.idx.size());
  for (std::size_t i = 0; i < x.idx.size(); ++i) rates[i] = inst.grid.value(x.idx[i]);
  return rates;
}

std::vector<int> select_dominant_interferers(const std::vector<double>& gains,
                                             const std::vector<double>& powers,
                                             const std::vector<double>& noise,
                                             double threshold_db) {
  const int n = static_cast<int>(powers.size());
  if (gains.size() != static_cast<std::size_t>(n) * n || noise.size() != powers.size())
    throw std::invalid_argument("dimension-mismatch: gains must be n*n, noise length n");

  const double rel = std::pow(10.0, -threshold_db / 10.0);
  std::vector<int> sigma(static_cast<std::size_t>(n), kNoInterferer);
  for (int i = 0; i < n; ++i) {
    int best = kNoInterferer;
    double best_power = -1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double p = gains[static_cast<std::size_t>(i) * n + j] * powers[static_cast<std::size_t>(j)];
      if (p > best_power) {  // strict: ties keep the lowest index
        best_power = p;
        best = j;
      }
    }
    // Drop interferers buried more than threshold_db below the noise floor.
    if (best != kNoInterferer && best_power < noise[static_cast<std::size_t>(i)] * rel)
      best = kNoInterferer;
    sigma[static_cast<std::size_t>(i)] = best;
  }
  return sigma;
}

namespace {

void require_positive_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      std::ostringstream os;
      os << "invariant-violation: " << what << " must be strictly positive and finite";
      throw std::invalid_argument(os.str());
    }
  }
}

}  // namespace

NetworkInstance build_instance(const std::vector<double>& gains,
                               const std::vector<double>& powers,
                               const std::vector<double>& noise,
                               const std::vector<int>& sigma,
                               const RateGrid& grid) {
  const int n = static_cast<int>(powers.size());
  if (n < 1) throw std::invalid_argument("dimension-mismatch: need at least one link");
  if (gains.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("dimension-mismatch: gains must be an n*n matrix");
  if (noise.size() != powers.size() || sigma.size() != powers.size())
    throw std::invalid_argument("dimension-mismatch: powers, noise and sigma must share length n");
  if (grid.count() < 2) throw std::invalid_argument("invariant-violation: grid needs >= 2 points");

  require_positive_finite(gains, "gains");
  require_positive_finite(powers, "powers");
  require_positive_finite(noise, "noise");

  for (int i = 0; i < n; ++i) {
    const int s = sigma[static_cast<std::size_t>(i)];
    if (s == i) throw std::invalid_argument("invariant-violation: a link cannot be its own dominant interferer");
    if (s != kNoInterferer && (s < 0 || s >= n))
      throw std::invalid_argument("invariant-violation: sigma index out of range");
  }

  NetworkInstance inst;
  inst.n = n;
  inst.gains = gains;
  inst.powers = powers;
  inst.noise = noise;
  inst.sigma = sigma;
  inst.grid = grid;
  return inst;
}

std::string dump_instance(const NetworkInstance& inst) {
  nlohmann::json j;
  j["n"] = inst.n;
  j["gains"] = inst.gains;
  j["powers"] = inst.powers;
  j["noise"] = inst.noise;
  std::vector<int> sigma1(inst.sigma.size());
  for (std::size_t i = 0; i < inst.sigma.size(); ++i)
    sigma1[i] = inst.sigma[i] == kNoInterferer ? 0 : inst.sigma[i] + 1;
  j["sigma"] = sigma1;  // 1-based, 0 = none
  j["grid"] = inst.grid.points;
  return j.dump(2);
}

NetworkInstance parse_instance(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  std::vector<int> sigma1 = j.at("sigma").get<std::vector<int>>();
  std::vector<int> sigma(sigma1.size());
  for (std::size_t i = 0; i < sigma1.size(); ++i)
    sigma[i] = sigma1[i] == 0 ? kNoInterferer : sigma1[i] - 1;
  RateGrid grid;
  grid.points = j.at("grid").get<std::vector<double>>();
  NetworkInstance inst = build_instance(j.at("gains").get<std::vector<double>>(),
                                        j.at("powers").get<std::vector<double>>(),
                                        j.at("noise").get<std::vector<double>>(), sigma, grid);
  if (inst.n != j.at("n").get<int>())
    throw std::invalid_argument("dimension-mismatch: declared n disagrees with vector sizes");
  return inst;
}

void save_instance(const NetworkInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << dump_instance(inst) << "\n";
}

NetworkInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

}  // namespace icsched
