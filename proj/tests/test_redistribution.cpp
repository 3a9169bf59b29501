// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "doctest.h"
#include "oracles.hpp"
#include "ponplan/redistribution.hpp"

using namespace ponplan;

TEST_CASE("registration cycle length") {
  CHECK(compute_nr(4, 3) == 6);
  CHECK(compute_nr(3, 3) == 5);
  CHECK(compute_nr(1, 2) == 2);
  CHECK(compute_nr(14, 8) == 16);
  CHECK(compute_nr(14, 7) == 17);
  CHECK_THROWS_AS(compute_nr(4, 1), std::invalid_argument);
}

TEST_CASE("single-ONU mappings") {
  const auto a = map_reg_slot({0, 0}, 4, 3);
  CHECK(a.i_r == 0);
  CHECK(a.w_r == 0);
  CHECK(map_reg_slot({0, 2}, 4, 3).i_r == 3);
  const auto last = map_reg_slot({2, 2}, 3, 3);
  CHECK(last.i_r == 4);
  CHECK(last.w_r == 0);
  CHECK_THROWS_AS(map_reg_slot({3, 0}, 3, 3), std::out_of_range);
  CHECK_THROWS_AS(map_reg_slot({0, 3}, 3, 3), std::out_of_range);
}

TEST_CASE("twelve ONUs fill a six-by-two grid exactly") {
  const auto all = enumerate_assignments(4, 3);
  REQUIRE(all.size() == 12);
  CHECK(vacant_slot_count(4, 3) == 0);
  CHECK(vacant_cells(4, 3).empty());
  std::set<std::pair<int, int>> cells;
  for (const auto& a : all) cells.insert({a.i_r, a.w_r});
  CHECK(cells.size() == 12);
  CHECK(cells.begin()->first == 0);
  CHECK(cells.rbegin()->first == 5);
}

TEST_CASE("nine ONUs leave exactly one cell free") {
  const auto all = enumerate_assignments(3, 3);
  REQUIRE(all.size() == 9);
  CHECK(vacant_slot_count(3, 3) == 1);
  const auto free = vacant_cells(3, 3);
  REQUIRE(free.size() == 1);
  CHECK(free[0].i_r == 4);
  CHECK(free[0].w_r == 1);
  CHECK(free[0].onu.lambda == -1);
}

TEST_CASE("two ONUs on a single data wavelength") {
  const auto all = enumerate_assignments(1, 2);
  REQUIRE(all.size() == 2);
  CHECK(all[0].i_r == 0);
  CHECK(all[1].i_r == 1);
  CHECK(all[0].w_r == 0);
  CHECK(all[1].w_r == 0);
  CHECK(vacant_slot_count(1, 2) == 0);
}

TEST_CASE("placement agrees with row-wise filling and is injective") {
  for (int w = 2; w <= 16; ++w) {
    for (int n = 1; n <= 64; ++n) {
      const auto all = enumerate_assignments(n, w);
      const auto fill = oracle::placements_by_filling(n, w);
      REQUIRE(all.size() == static_cast<std::size_t>(n * w));
      std::set<std::pair<int, int>> cells;
      int max_i_r = 0;
      for (std::size_t i = 0; i < all.size(); ++i) {
        const auto& a = all[i];
        cells.insert({a.i_r, a.w_r});
        max_i_r = std::max(max_i_r, a.i_r);
        REQUIRE(a.i_r == map_reg_slot(a.onu, n, w).i_r);
        REQUIRE(a.w_r >= 0);
        REQUIRE(a.w_r < w - 1);
        REQUIRE(fill[i].i_n == a.onu.i_n);
        REQUIRE(fill[i].i_r == a.i_r);
      }
      REQUIRE(cells.size() == all.size());
      const int n_r = compute_nr(n, w);
      REQUIRE(max_i_r <= n_r - 1);
      if ((n * w) % (w - 1) == 0) REQUIRE(max_i_r == n_r - 1);
      REQUIRE(vacant_slot_count(n, w) == (w - 1) * n_r - n * w);
      REQUIRE(static_cast<int>(vacant_cells(n, w).size()) == vacant_slot_count(n, w));
    }
  }
}

TEST_CASE("fill order increases along the registration grid") {
  const int n = 5;
  const int w = 4;
  auto all = enumerate_assignments(n, w);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return std::tie(a.i_r, a.w_r) < std::tie(b.i_r, b.w_r);
  });
  int prev = -1;
  for (const auto& a : all) {
    const int g = w * a.onu.i_n + a.onu.lambda;
    CHECK(g > prev);
    prev = g;
  }
}

TEST_CASE("host wavelength is skipped when mapping data ordinals") {
  CHECK(physical_wavelength(0, 4, 3) == 0);
  CHECK(physical_wavelength(2, 4, 3) == 2);
  CHECK(physical_wavelength(0, 4, 0) == 1);
  CHECK(physical_wavelength(1, 4, 1) == 2);
  CHECK(physical_wavelength(2, 4, 1) == 3);
  CHECK_THROWS_AS(physical_wavelength(3, 4, 1), std::out_of_range);
  CHECK_THROWS_AS(physical_wavelength(0, 4, 4), std::out_of_range);
}
