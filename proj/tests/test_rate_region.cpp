// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "icsched/rate_region.hpp"
#include "icsched/rng.hpp"
#include "test_helpers.hpp"

using namespace icsched;

namespace {

// Direct transcription of the three MAC inequalities and the reuse-1 cap,
// kept independent of the library implementation.
bool reference_feasible(const LinkRegionParams& p, double x_i, double x_j) {
  const double L = p.loss_factor;
  const bool reuse1 = x_i <= std::log2(1.0 + p.rho_reuse1 / L) + 1e-12;
  if (!p.has_interferer) return reuse1;
  const bool mac = x_i <= std::log2(1.0 + p.rho_serv / L) + 1e-12 &&
                   x_j <= std::log2(1.0 + p.rho_int / L) + 1e-12 &&
                   x_i + x_j <= std::log2(1.0 + (p.rho_serv + p.rho_int) / L) + 1e-12;
  return reuse1 || mac;
}

LinkRegionParams random_params(Rng& rng) {
  LinkRegionParams p;
  p.has_interferer = true;
  p.rho_serv = std::pow(10.0, rng.uniform(-2.0, 2.5));
  p.rho_int = std::pow(10.0, rng.uniform(-2.0, 2.5));
  // Reuse-1 SINR for a two-gain receiver: serving power over interferer
  // power plus unit noise, mirroring how real instances produce it.
  p.rho_reuse1 = p.rho_serv / (1.0 + p.rho_int);
  return p;
}

}  // namespace

TEST_CASE("reuse-1 SINR: no interference, symmetric, and hand-computed cases") {
  const RateGrid g = make_rate_grid(5, 5.0, 0.05);
  // Single link: G11*P1 = 1, N1 = 1.
  const NetworkInstance solo =
      test::instance_from_rx_powers({{1.0}}, {1.0}, {kNoInterferer}, g);
  CHECK(sinr_reuse1(solo, 0) == doctest::Approx(1.0));

  const NetworkInstance pair = test::two_link_instance(1.0, 1.0, g);
  CHECK(sinr_reuse1(pair, 0) == doctest::Approx(0.5));

  // Received powers (2, 0.5, 0.3) at RX0 with N = 0.2 -> 2 / (0.8 + 0.2).
  const NetworkInstance three = test::instance_from_rx_powers(
      {{2.0, 0.5, 0.3}, {0.1, 1.0, 0.1}, {0.1, 0.1, 1.0}}, {0.2, 1.0, 1.0}, {1, 0, 0}, g);
  CHECK(sinr_reuse1(three, 0) == doctest::Approx(2.0));
}

TEST_CASE("joint-detection SINR excludes the dominant interferer") {
  const RateGrid g = make_rate_grid(5, 5.0, 0.05);
  const NetworkInstance pair = test::two_link_instance(1.0, 1.0, g);
  CHECK(sinr_joint(pair, 0, 0) == doctest::Approx(1.0));
  CHECK(sinr_joint(pair, 0, 1) == doctest::Approx(1.0));

  // Powers from TX0..TX2 at RX0 = (2, 1, 0.5), N0 = 0.5, sigma[0] = 1:
  // denominator keeps only TX2 and noise.
  const NetworkInstance three = test::instance_from_rx_powers(
      {{2.0, 1.0, 0.5}, {0.1, 1.0, 0.1}, {0.1, 0.1, 1.0}}, {0.5, 1.0, 1.0}, {1, 0, 0}, g);
  CHECK(sinr_joint(three, 0, 0) == doctest::Approx(2.0));
  CHECK(sinr_joint(three, 0, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(sinr_joint(three, 0, 2), std::invalid_argument);

  const NetworkInstance solo =
      test::instance_from_rx_powers({{1.0}}, {1.0}, {kNoInterferer}, g);
  CHECK_THROWS_AS(sinr_joint(solo, 0, 0), std::invalid_argument);
}

TEST_CASE("region params bundle the SINRs; interferer-free links have no rho_int") {
  const RateGrid g = make_rate_grid(5, 5.0, 0.05);
  const NetworkInstance pair = test::two_link_instance(2.0, 2.0, g);
  const LinkRegionParams p = region_params(pair, 0);
  CHECK(p.has_interferer);
  CHECK(p.rho_reuse1 == doctest::Approx(2.0 / 3.0));
  CHECK(p.rho_serv == doctest::Approx(2.0));
  CHECK(p.rho_int == doctest::Approx(2.0));
  CHECK(p.rho_reuse1 <= p.rho_serv);

  const NetworkInstance solo =
      test::instance_from_rx_powers({{1.0}}, {1.0}, {kNoInterferer}, g);
  CHECK_FALSE(region_params(solo, 0).has_interferer);
}

TEST_CASE("feasibility on the worked MAC example") {
  LinkRegionParams p;
  p.has_interferer = true;
  p.rho_serv = 2.0;
  p.rho_int = 2.0;
  p.rho_reuse1 = 2.0 / 3.0;  // reuse-1 cap log2(4/3) ~ 0.415
  CHECK(is_feasible(p, 0.5, 0.5));
  CHECK_FALSE(is_feasible(p, 1.0, 1.0));  // sum 2 > log2(3) and reuse-1 fails
  // Zero attempt is always reuse-1 feasible.
  CHECK(is_feasible(p, 0.0, 100.0));
  // Reuse-1 branch ignores the interferer's rate.
  CHECK(is_feasible(p, 0.4, 100.0));
  CHECK(achieved_rate(p, 0.5, 0.5) == 0.5);
  CHECK(achieved_rate(p, 1.0, 1.0) == 0.0);
  CHECK(achieved_rate(p, 0.0, 3.0) == 0.0);
}

TEST_CASE("region equals the direct inequality transcription") {
  Rng rng(11);
  const RateGrid g = make_rate_grid(25, 5.0, 0.05);
  for (int trial = 0; trial < 200; ++trial) {
    const LinkRegionParams p = random_params(rng);
    for (int a = 0; a < g.count(); ++a)
      for (int b = 0; b < g.count(); ++b)
        CHECK(is_feasible(p, g.value(a), g.value(b)) == reference_feasible(p, g.value(a), g.value(b)));
  }
}

TEST_CASE("monotone decodability: lowering the own rate keeps feasibility") {
  Rng rng(13);
  const RateGrid g = make_rate_grid(25, 5.0, 0.05);
  for (int trial = 0; trial < 200; ++trial) {
    const LinkRegionParams p = random_params(rng);
    for (int b = 0; b < g.count(); ++b) {
      bool seen_feasible = false;
      for (int a = g.count() - 1; a >= 0; --a) {
        const bool f = is_feasible(p, g.value(a), g.value(b));
        if (seen_feasible) CHECK(f);
        seen_feasible = seen_feasible || f;
      }
      CHECK(seen_feasible);  // zero rate is always feasible
    }
  }
}

TEST_CASE("interference-free restoration when the interferer rate is low enough") {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const LinkRegionParams p = random_params(rng);
    const double serv_cap = ic_serv_cap(p);
    const double headroom = std::min(ic_int_cap(p), ic_sum_cap(p) - serv_cap);
    if (headroom <= 1e-9) continue;
    const double x_j = rng.uniform(0.0, headroom);
    // With the interferer this low, the serving link reaches the same cap
    // as if the interferer were absent.
    CHECK(is_feasible(p, serv_cap, x_j));
    CHECK_FALSE(is_feasible(p, serv_cap + 1e-6, x_j));
  }
}

TEST_CASE("the union region is not convex: witness triple") {
  LinkRegionParams p;
  p.has_interferer = true;
  p.rho_serv = 2.0;
  p.rho_int = 2.0;
  p.rho_reuse1 = 0.4;
  const double a_i = 1.0, a_j = 0.58;   // in the MAC pentagon
  const double b_i = 0.2, b_j = 5.0;    // reuse-1 feasible, interferer huge
  CHECK(is_feasible(p, a_i, a_j));
  CHECK(is_feasible(p, b_i, b_j));
  const double m_i = 0.5 * (a_i + b_i), m_j = 0.5 * (a_j + b_j);
  CHECK_FALSE(is_feasible(p, m_i, m_j));
}

TEST_CASE("projection: identity on feasible input, snap otherwise, zero stays zero") {
  const RateGrid g = make_rate_grid(25, 5.0, 0.05);
  const NetworkInstance inst = test::two_link_instance(2.0, 2.0, g);
  // Both links attempt 0.5 bps/Hz equivalents: feasible, unchanged.
  ScheduleVector x;
  x.idx = {g.largest_index_leq(0.5), g.largest_index_leq(0.5)};
  CHECK(project_feasible_schedule(inst, x) == x);

  // Link 0 at the top of the grid against a huge interferer attempt: falls
  // to the largest grid point within its reuse-1 cap.
  ScheduleVector y;
  y.idx = {24, 24};
  const auto rates = project_feasible(inst, y);
  const LinkRegionParams p = region_params(inst, 0);
  CHECK(rates[0] == inst.grid.value(inst.grid.largest_index_leq(reuse1_cap(p))));

  ScheduleVector z;
  z.idx = {0, 24};
  CHECK(project_feasible(inst, z)[0] == 0.0);
}

TEST_CASE("projection output is feasible for every link") {
  Rng rng(23);
  const RateGrid g = make_rate_grid(25, 5.0, 0.05);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + rng.uniform_int(4);
    std::vector<double> gains(static_cast<std::size_t>(n) * n);
    for (auto& v : gains) v = std::pow(10.0, rng.uniform(-4.0, 0.0));
    std::vector<double> noise(static_cast<std::size_t>(n));
    for (auto& v : noise) v = std::pow(10.0, rng.uniform(-4.0, -1.0));
    const std::vector<double> powers(static_cast<std::size_t>(n), 1.0);
    const auto sigma = select_dominant_interferers(gains, powers, noise);
    const NetworkInstance inst = build_instance(gains, powers, noise, sigma, g);

    ScheduleVector attempt;
    attempt.idx.resize(static_cast<std::size_t>(n));
    for (auto& v : attempt.idx) v = rng.uniform_int(g.count());
    const ScheduleVector proj = project_feasible_schedule(inst, attempt);
    for (int i = 0; i < n; ++i) {
      const LinkRegionParams p = region_params(inst, i);
      const int j = inst.sigma[static_cast<std::size_t>(i)];
      const double x_j = j == kNoInterferer ? 0.0 : g.value(attempt.idx[static_cast<std::size_t>(j)]);
      const double r = g.value(proj.idx[static_cast<std::size_t>(i)]);
      CHECK(achieved_rate(p, r, x_j) == r);
      CHECK(proj.idx[static_cast<std::size_t>(i)] <= attempt.idx[static_cast<std::size_t>(i)]);
    }
  }
}
