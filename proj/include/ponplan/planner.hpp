// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>

#include "ponplan/delay_analysis.hpp"
#include "ponplan/model.hpp"
#include "ponplan/slotting.hpp"

namespace ponplan {

struct SearchStats {
  std::int64_t iterations = 0; // values of N tried
  std::int64_t candidates = 0; // (f_n, f_r, k_r, T_sr) tuples evaluated
};

struct SearchOptions {
  bool parallel = true;
  // Pin the gap as close to T_gap as possible (largest k_n) instead of
  // returning the shortest non-registration phase that drains.
  bool exact_gap = false;
  // Extra k_r values tried beyond ceil(T_reg / (N_r * T_sr)).
  int k_r_slack = 1;
  CheckOptions check;
};

struct Gain {
  double pct = 0.0;
  bool defined = false; // false when the baseline supports nothing
};

struct PlanResult {
  int w = 0;
  int n_star = 0;
  std::optional<CyclePlan> plan;
  int n_baseline = 0;
  std::int64_t total_proposed = 0;
  std::int64_t total_baseline = 0;
  Gain gain;
  SearchStats stats;
};

/// floor(R_E / R_C)
int n_max(const ValidatedParams& p);

/// A plan with N ONUs per wavelength that passes check_plan, or nothing.
/// Among feasible plans the shortest registration window wins, then the
/// shortest non-registration slot. Parallel over registration-slot candidates.
std::optional<CyclePlan> inner_feasible(int n, int w, const ValidatedParams& p,
                                        const SearchOptions& opts = {},
                                        SearchStats* stats = nullptr);

/// Single-threaded reference for inner_feasible; must return the same plan.
std::optional<CyclePlan> inner_feasible_serial(int n, int w, const ValidatedParams& p,
                                               const SearchOptions& opts = {},
                                               SearchStats* stats = nullptr);

/// Largest N in n_max..1 admitting a feasible plan, plus the baseline comparison.
PlanResult solve(int w, const ValidatedParams& p, const SearchOptions& opts = {});

/// ONUs per data wavelength when one wavelength is reserved for registration.
/// Delay in steady operation is one cycle, so n * T_s <= D_b.
int solve_baseline(int w, const ValidatedParams& p);

/// D_b lower bound with a standard quiet window: T_reg + T_C.
double standard_epon_delay_bound(double t_reg, double t_c);

Gain gain(std::int64_t total_proposed, std::int64_t total_baseline);

} // namespace ponplan
