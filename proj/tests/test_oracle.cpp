// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "icsched/oracle.hpp"
#include "icsched/rate_region.hpp"
#include "icsched/rng.hpp"
#include "test_helpers.hpp"

using namespace icsched;

TEST_CASE("single free link: optimum is the top grid point") {
  const RateGrid g = make_rate_grid(5, 5.0, 0.05);
  const NetworkInstance solo = test::instance_from_rx_powers({{1e4}}, {1.0}, {kNoInterferer}, g);
  const auto tables = build_utility_tables(solo, UtilityKind::sum_rate());
  const OracleResult best = exhaustive_optimum(solo, tables);
  CHECK(best.best.idx == std::vector<int>{4});
  CHECK(best.best_utility == doctest::Approx(5.0));
  CHECK(best.points_evaluated == 5);
}

TEST_CASE("two-link enumeration agrees with a direct nested loop") {
  const RateGrid g = make_rate_grid(3, 1.0, 0.5);  // {0, 0.5, 1}
  const NetworkInstance inst = test::two_link_instance(2.0, 2.0, g);
  const auto tables = build_utility_tables(inst, UtilityKind::sum_rate());

  double want = -1e300;
  std::pair<int, int> want_idx{0, 0};
  // Lex-descending scan with >= so the final winner among ties is the
  // lexicographically smallest index vector.
  for (int a = 2; a >= 0; --a)
    for (int b = 2; b >= 0; --b) {
      const double f = tables[0].at(a, b) + tables[1].at(b, a);
      if (f >= want) {
        want = f;
        want_idx = {a, b};
      }
    }

  const OracleResult best = exhaustive_optimum(inst, tables);
  CHECK(best.points_evaluated == 9);
  CHECK(best.best_utility == doctest::Approx(want));
  CHECK(best.best.idx == std::vector<int>{want_idx.first, want_idx.second});
  // The symmetric instance peaks off-diagonal: one link backs off so the
  // other can run at full rate.
  CHECK(best.best_utility == doctest::Approx(1.5));
}

TEST_CASE("oracle dominates any other schedule including projected BP") {
  Rng rng(71);
  const RateGrid g = make_rate_grid(5, 5.0, 0.05);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> gains(9);
    for (auto& v : gains) v = std::pow(10.0, rng.uniform(-3.0, 0.0));
    std::vector<double> noise(3);
    for (auto& v : noise) v = std::pow(10.0, rng.uniform(-3.0, -1.0));
    const NetworkInstance inst = build_instance(
        gains, {1.0, 1.0, 1.0}, noise, select_dominant_interferers(gains, {1.0, 1.0, 1.0}, noise), g);
    const auto tables = build_utility_tables(inst, UtilityKind::log());
    const OracleResult best = exhaustive_optimum(inst, tables);

    ScheduleVector x;
    x.idx.resize(3);
    for (int k = 0; k < 10; ++k) {
      for (auto& v : x.idx) v = rng.uniform_int(g.count());
      CHECK(total_utility(inst, tables, x) <= best.best_utility + 1e-12);
    }
    const BPResult bp = run_max_sum(inst, tables, {.max_iters = 8});
    const ScheduleVector projected = project_feasible_schedule(inst, bp.decisions);
    CHECK(total_utility(inst, tables, projected) <= best.best_utility + 1e-12);
  }
}

TEST_CASE("oracle is permutation-equivariant up to tie-breaking") {
  Rng rng(73);
  const RateGrid g = make_rate_grid(4, 5.0, 0.05);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3;
    std::vector<double> gains(9);
    for (auto& v : gains) v = std::pow(10.0, rng.uniform(-3.0, 0.0));
    std::vector<double> noise(3);
    for (auto& v : noise) v = std::pow(10.0, rng.uniform(-3.0, -1.0));
    const auto sigma = select_dominant_interferers(gains, {1.0, 1.0, 1.0}, noise);
    const NetworkInstance inst = build_instance(gains, {1.0, 1.0, 1.0}, noise, sigma, g);

    // Relabel links by the cyclic permutation p(i) = (i+1) mod 3.
    const auto perm = [n](int i) { return (i + 1) % n; };
    std::vector<double> gains2(9), noise2(3);
    std::vector<int> sigma2(3);
    for (int i = 0; i < n; ++i) {
      noise2[static_cast<std::size_t>(perm(i))] = noise[static_cast<std::size_t>(i)];
      sigma2[static_cast<std::size_t>(perm(i))] =
          sigma[static_cast<std::size_t>(i)] == kNoInterferer
              ? kNoInterferer
              : perm(sigma[static_cast<std::size_t>(i)]);
      for (int j = 0; j < n; ++j)
        gains2[static_cast<std::size_t>(perm(i)) * n + perm(j)] =
            gains[static_cast<std::size_t>(i) * n + j];
    }
    const NetworkInstance inst2 = build_instance(gains2, {1.0, 1.0, 1.0}, noise2, sigma2, g);

    const auto t1 = build_utility_tables(inst, UtilityKind::log());
    const auto t2 = build_utility_tables(inst2, UtilityKind::log());
    const OracleResult b1 = exhaustive_optimum(inst, t1);
    const OracleResult b2 = exhaustive_optimum(inst2, t2);
    CHECK(b1.best_utility == doctest::Approx(b2.best_utility).epsilon(1e-12));
    // The permuted argmax achieves the same utility on the relabeled network.
    ScheduleVector permuted;
    permuted.idx.resize(3);
    for (int i = 0; i < n; ++i)
      permuted.idx[static_cast<std::size_t>(perm(i))] = b1.best.idx[static_cast<std::size_t>(i)];
    CHECK(total_utility(inst2, t2, permuted) == doctest::Approx(b2.best_utility).epsilon(1e-12));
  }
}

TEST_CASE("oversized joint grids are refused") {
  const RateGrid g = make_rate_grid(10, 5.0, 0.05);
  const int n = 9;  // 10^9 > 10^8
  std::vector<std::vector<double>> rx(n, std::vector<double>(n, 1e-6));
  std::vector<int> sigma(n, kNoInterferer);
  for (int i = 0; i < n; ++i) rx[i][i] = 1.0;
  const NetworkInstance inst =
      test::instance_from_rx_powers(rx, std::vector<double>(n, 0.1), sigma, g);
  const auto tables = build_utility_tables(inst, UtilityKind::sum_rate());
  CHECK_THROWS_AS(exhaustive_optimum(inst, tables), std::runtime_error);
  CHECK_THROWS_AS(compare_bp_to_oracle(inst, tables), std::runtime_error);
}

TEST_CASE("comparison report: converged runs close the gap") {
  Rng rng(79);
  const RateGrid g = make_rate_grid(5, 5.0, 0.05);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> gains(9);
    for (auto& v : gains) v = std::pow(10.0, rng.uniform(-4.0, 0.0));
    std::vector<double> noise(3);
    for (auto& v : noise) v = std::pow(10.0, rng.uniform(-4.0, -1.0));
    const NetworkInstance inst = build_instance(
        gains, {1.0, 1.0, 1.0}, noise, select_dominant_interferers(gains, {1.0, 1.0, 1.0}, noise), g);
    const auto tables = build_utility_tables(inst, UtilityKind::log());
    const CompareReport rep =
        compare_bp_to_oracle(inst, tables, {.max_iters = 200, .damping = 0.5, .tol = 1e-6});
    CHECK(rep.gap >= -1e-12);
    if (rep.converged) CHECK(std::fabs(rep.gap) <= 1e-9);
  }
}

TEST_CASE("trivial single link has zero gap") {
  const RateGrid g = make_rate_grid(5, 5.0, 0.05);
  const NetworkInstance solo = test::instance_from_rx_powers({{1e4}}, {1.0}, {kNoInterferer}, g);
  const auto tables = build_utility_tables(solo, UtilityKind::sum_rate());
  const CompareReport rep = compare_bp_to_oracle(solo, tables);
  CHECK(rep.converged);
  CHECK(rep.gap == doctest::Approx(0.0));
}
