// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "ponplan/slotting.hpp"

using namespace ponplan;

TEST_CASE("packet count is the payload ceiling") {
  const auto p = default_params();
  CHECK(packets_per_slot(100, p) == 2);
  CHECK(packets_per_slot(1, p) == 1);

  SystemParams exact;
  exact.alpha_bits = 120;
  CHECK(packets_per_slot(100, validate_params(exact)) == 1);
  CHECK(packets_per_slot(101, validate_params(exact)) == 2);

  SystemParams bit;
  bit.alpha_bits = 1;
  CHECK(packets_per_slot(12000, validate_params(bit)) == 1);
  CHECK(packets_per_slot(12001, validate_params(bit)) == 2);
}

TEST_CASE("packet count matches a greedy packer") {
  const auto p = default_params();
  for (std::int64_t f = 1; f <= 5000; ++f)
    REQUIRE(packets_per_slot(f, p) == oracle::greedy_packets(f, p->alpha_bits, p->e_max_bits));
}

TEST_CASE("minimum slot duration") {
  const auto p = default_params();
  CHECK(min_slot_duration(100, p) == doctest::Approx(2.3216e-6).epsilon(1e-12));
  // Guard time dominates a single-frame slot: 336 bits take 33.6 ns.
  CHECK(min_slot_duration(1, p) == doctest::Approx(1.0336e-6).epsilon(1e-12));
  const SlotSpec s = min_slot(100, p);
  CHECK(s.f == 100);
  CHECK(s.p == 2);
  CHECK(s.t_s == min_slot_duration(100, p));
}

TEST_CASE("slot duration agrees with bit accounting and carries overhead") {
  const auto p = default_params();
  double prev = 0.0;
  for (std::int64_t f = 1; f <= 5000; ++f) {
    const double t = min_slot_duration(f, p);
    REQUIRE(t == doctest::Approx(oracle::slot_by_bits(f, p.raw())).epsilon(1e-13));
    REQUIRE(t > prev);
    REQUIRE(t * p->r_e_bps >= static_cast<double>(f) * p->alpha_bits + p->l_hdr_bits);
    REQUIRE(static_cast<double>(f) * p->alpha_bits / (t * p->r_e_bps) < 1.0);
    prev = t;
  }
}

TEST_CASE("cycle, window and gap durations") {
  CyclePlan plan;
  plan.n = 2;
  plan.w = 3;
  plan.t_sn = 3e-6;
  plan.t_sr = 5e-6;
  plan.k_r = 2;
  plan.k_n = 3;
  CHECK(plan.n_r() == 3);
  const CycleDurations c = cycle_durations(plan);
  CHECK(c.t_cn == 2 * plan.t_sn);
  CHECK(c.t_cr == 3 * plan.t_sr);
  const WindowAndGap wg = window_and_gap(plan);
  CHECK(wg.window == doctest::Approx(6 * plan.t_sr));
  CHECK(wg.gap == doctest::Approx(6 * plan.t_sn));

  plan.k_r = plan.k_n = 1;
  CHECK(window_and_gap(plan).window == c.t_cr);
  CHECK(window_and_gap(plan).gap == c.t_cn);

  plan.n = 1;
  CHECK(cycle_durations(plan).t_cn == plan.t_sn);
  plan.t_sn *= 2;
  CHECK(cycle_durations(plan).t_cn == 2 * 3e-6);
}

TEST_CASE("structural plan checks") {
  const auto p = default_params();
  const CyclePlan ok = make_min_plan(4, 3, 100, 100, 2, 2, p);
  CHECK_NOTHROW(validate_plan_structure(ok, p));

  CyclePlan bad = ok;
  bad.t_sn = ok.t_sn * 0.999;
  CHECK_THROWS_AS(validate_plan_structure(bad, p), std::invalid_argument);
  bad = ok;
  bad.k_r = 0;
  CHECK_THROWS_AS(validate_plan_structure(bad, p), std::invalid_argument);
  CHECK_NOTHROW(validate_plan_structure(bad, p, /*allow_no_registration=*/true));
  bad = ok;
  bad.k_n = 0;
  CHECK_THROWS_AS(validate_plan_structure(bad, p), std::invalid_argument);
  bad = ok;
  bad.f_r = 0;
  CHECK_THROWS_AS(validate_plan_structure(bad, p), std::invalid_argument);
  bad = ok;
  bad.host = 3;
  CHECK_THROWS_AS(validate_plan_structure(bad, p), std::invalid_argument);
  bad = ok;
  bad.w = 1;
  CHECK_THROWS_AS(validate_plan_structure(bad, p), std::invalid_argument);
}
