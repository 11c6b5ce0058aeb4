// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "icsched/net_model.hpp"
#include "icsched/rng.hpp"
#include "test_helpers.hpp"

using namespace icsched;

TEST_CASE("rate grid: 25 log-spaced points from zero to 5 bps/Hz") {
  const RateGrid g = make_rate_grid(25, 5.0, 0.05);
  REQUIRE(g.count() == 25);
  CHECK(g.points[0] == 0.0);
  CHECK(g.points[1] == doctest::Approx(0.05));
  CHECK(g.points[24] == 5.0);
  const double ratio = g.points[2] / g.points[1];
  for (int k = 1; k + 1 < 25; ++k)
    CHECK(g.points[k + 1] / g.points[k] == doctest::Approx(ratio).epsilon(1e-12));
  for (int k = 0; k + 1 < 25; ++k) CHECK(g.points[k] < g.points[k + 1]);
}

TEST_CASE("rate grid: degenerate two-point grid") {
  const RateGrid g = make_rate_grid(2, 5.0, 5.0);
  REQUIRE(g.count() == 2);
  CHECK(g.points[0] == 0.0);
  CHECK(g.points[1] == 5.0);
}

TEST_CASE("rate grid: three points solve the geometric spacing by hand") {
  // count-1 = 2 points from 1 to 4, ratio 4.
  const RateGrid g = make_rate_grid(3, 4.0, 1.0);
  REQUIRE(g.count() == 3);
  CHECK(g.points[0] == 0.0);
  CHECK(g.points[1] == doctest::Approx(1.0));
  CHECK(g.points[2] == doctest::Approx(4.0));
}

TEST_CASE("rate grid: parameter validation") {
  CHECK_THROWS_AS(make_rate_grid(1, 5.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(make_rate_grid(25, 5.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_rate_grid(25, 5.0, 6.0), std::invalid_argument);
  CHECK_THROWS_AS(make_rate_grid(3, 5.0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(make_rate_grid(25, -1.0, 0.05), std::invalid_argument);
}

TEST_CASE("rate grid: determinism and snapping") {
  const RateGrid a = make_rate_grid(25, 5.0, 0.05);
  const RateGrid b = make_rate_grid(25, 5.0, 0.05);
  CHECK(a == b);
  CHECK(a.largest_index_leq(-0.1) == 0);
  CHECK(a.largest_index_leq(0.0) == 0);
  CHECK(a.largest_index_leq(5.0) == 24);
  CHECK(a.largest_index_leq(100.0) == 24);
  CHECK(a.value(a.largest_index_leq(0.06)) == doctest::Approx(0.05));
}

TEST_CASE("dominant interferer: two links pick each other") {
  const std::vector<double> gains = {1.0, 0.2, 0.3, 1.0};
  const auto sigma = select_dominant_interferers(gains, {1.0, 1.0}, {1e-3, 1e-3});
  CHECK(sigma == std::vector<int>{1, 0});
}

TEST_CASE("dominant interferer: thresholded out when buried under noise") {
  // Interference at RX0 sits far more than 20 dB below its noise floor.
  const std::vector<std::vector<double>> rx = {
      {1.0, 1e-9, 1e-15}, {1e-3, 1.0, 1e-4}, {1e-3, 1e-4, 1.0}};
  std::vector<double> gains;
  for (const auto& row : rx) gains.insert(gains.end(), row.begin(), row.end());
  const auto sigma = select_dominant_interferers(gains, {1.0, 1.0, 1.0}, {1.0, 1e-6, 1e-6}, 20.0);
  CHECK(sigma[0] == kNoInterferer);
  CHECK(sigma[1] == 0);
  CHECK(sigma[2] == 0);
}

TEST_CASE("dominant interferer: argmax of received interference power") {
  const std::vector<double> gains = {1.0, 0.3, 0.7, 0.1, 1.0, 0.2, 0.5, 0.1, 1.0};
  const auto sigma = select_dominant_interferers(gains, {1.0, 1.0, 1.0}, {1e-3, 1e-3, 1e-3});
  CHECK(sigma[0] == 2);  // 0.7 beats 0.3
}

TEST_CASE("dominant interferer: ties break to the lowest index") {
  const std::vector<double> gains = {1.0, 0.5, 0.5, 0.5, 1.0, 0.5, 0.5, 0.5, 1.0};
  const auto sigma = select_dominant_interferers(gains, {1.0, 1.0, 1.0}, {1e-3, 1e-3, 1e-3});
  CHECK(sigma == std::vector<int>{1, 0, 0});
}

TEST_CASE("dominant interferer: scale invariance") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + rng.uniform_int(5);
    std::vector<double> gains(static_cast<std::size_t>(n) * n);
    std::vector<double> powers(static_cast<std::size_t>(n));
    std::vector<double> noise(static_cast<std::size_t>(n));
    for (auto& g : gains) g = std::pow(10.0, rng.uniform(-4.0, 0.0));
    for (auto& p : powers) p = rng.uniform(0.5, 2.0);
    for (auto& w : noise) w = std::pow(10.0, rng.uniform(-4.0, -1.0));
    const auto base = select_dominant_interferers(gains, powers, noise);
    const double c = std::pow(10.0, rng.uniform(-3.0, 3.0));
    auto gains2 = gains;
    auto noise2 = noise;
    for (auto& g : gains2) g *= c;
    for (auto& w : noise2) w *= c;
    CHECK(select_dominant_interferers(gains2, powers, noise2) == base);
  }
}

TEST_CASE("build_instance accepts a valid two-link network") {
  const RateGrid g = make_rate_grid(5, 5.0, 0.05);
  const NetworkInstance inst = test::two_link_instance(2.0, 1.0, g);
  CHECK(inst.n == 2);
  CHECK(inst.gain(0, 1) == 1.0);
  CHECK(inst.rx_power(1, 1) == 2.0);
}

TEST_CASE("build_instance rejects self-interference and bad shapes") {
  const RateGrid g = make_rate_grid(5, 5.0, 0.05);
  CHECK_THROWS_AS(build_instance({1.0, 1.0, 1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {0, 0}, g),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_instance({1.0, 1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {1, 0}, g),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_instance({1.0, -1.0, 1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {1, 0}, g),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_instance({1.0, 1.0, 1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {3, 0}, g),
                  std::invalid_argument);
}

TEST_CASE("six-link topology recovered from a gains pattern") {
  // Mutual pair 0<->1, chain 2->3 (wait: sigma[3]=2), shared interferer 1
  // for links 4 and 5. Encoded purely through received-power ordering.
  const int n = 6;
  const std::vector<int> want = {1, 0, kNoInterferer, 2, 1, 1};
  std::vector<std::vector<double>> rx(n, std::vector<double>(n, 1e-6));
  for (int i = 0; i < n; ++i) rx[i][i] = 1.0;
  rx[0][1] = 0.5;
  rx[1][0] = 0.4;
  rx[3][2] = 0.3;
  rx[4][1] = 0.2;
  rx[5][1] = 0.6;
  // Link 2 hears nothing above the threshold.
  for (int j = 0; j < n; ++j)
    if (j != 2) rx[2][j] = 1e-9;
  const NetworkInstance inst = test::instance_from_rx_powers(
      rx, std::vector<double>(n, 1e-3), want, make_rate_grid(5, 5.0, 0.05));
  const auto sigma = select_dominant_interferers(inst.gains, inst.powers, inst.noise, 20.0);
  CHECK(sigma == want);
}

TEST_CASE("instance serialization round-trips, sigma 1-based with 0 = none") {
  const RateGrid g = make_rate_grid(4, 5.0, 0.05);
  const std::vector<std::vector<double>> rx = {{1.0, 0.2, 1e-9}, {0.3, 1.0, 1e-9}, {1e-9, 1e-9, 1.0}};
  const NetworkInstance inst =
      test::instance_from_rx_powers(rx, {1e-3, 1e-3, 1.0}, {1, 0, kNoInterferer}, g);
  const std::string text = dump_instance(inst);
  CHECK(text.find("\"sigma\": [") != std::string::npos);
  CHECK(text.find("0") != std::string::npos);
  const NetworkInstance back = parse_instance(text);
  CHECK(back == inst);

  const std::string path = (std::filesystem::temp_directory_path() / "icsched_inst.json").string();
  save_instance(inst, path);
  CHECK(load_instance(path) == inst);
  std::filesystem::remove(path);
}

TEST_CASE("seed derivation is stable and spread out") {
  CHECK(derive_stream_seed(1, 0) != derive_stream_seed(1, 1));
  CHECK(derive_stream_seed(1, 0) != derive_stream_seed(2, 0));
  CHECK(derive_stream_seed(42, 7) == derive_stream_seed(42, 7));
}
