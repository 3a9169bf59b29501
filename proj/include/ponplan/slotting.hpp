// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "ponplan/model.hpp"

namespace ponplan {

/// Ethernet packets needed to carry f basic frames: ceil(f*alpha / E_max).
/// Frames may straddle packet boundaries (pure bit accounting).
std::int64_t packets_per_slot(std::int64_t f, const ValidatedParams& p);

/// Smallest slot that carries f frames: payload plus one header per packet,
/// at line rate, plus the guard band.
double min_slot_duration(std::int64_t f, const ValidatedParams& p);

struct SlotSpec {
  std::int64_t f = 1;
  std::int64_t p = 1;
  double t_s = 0.0;
};

SlotSpec min_slot(std::int64_t f, const ValidatedParams& p);

/// A complete candidate schedule for one super-cycle: k_r registration cycles
/// followed by k_n non-registration cycles.
struct CyclePlan {
  int n = 1;
  int w = 2;
  std::int64_t f_n = 1;
  std::int64_t f_r = 1;
  std::int64_t k_n = 1;
  std::int64_t k_r = 1;
  double t_sn = 0.0;
  double t_sr = 0.0;
  int host = -1; // wavelength hosting registration; -1 means W-1

  int n_r() const;
  int host_wavelength() const { return host < 0 ? w - 1 : host; }
  double t_cn() const { return n * t_sn; }
  double t_cr() const { return n_r() * t_sr; }
  double window() const { return static_cast<double>(k_r) * t_cr(); }
  double gap() const { return static_cast<double>(k_n) * t_cn(); }
  double super_cycle() const { return window() + gap(); }

  friend bool operator==(const CyclePlan&, const CyclePlan&) = default;
};

struct CycleDurations {
  double t_cn = 0.0;
  double t_cr = 0.0;
};

struct WindowAndGap {
  double window = 0.0;
  double gap = 0.0;
};

CycleDurations cycle_durations(const CyclePlan& plan);
WindowAndGap window_and_gap(const CyclePlan& plan);

/// Throws std::invalid_argument when the plan violates a structural
/// invariant: topology, counts >= 1, slots at least their minimum duration.
/// `allow_no_registration` admits k_r = 0 (steady operation, test use).
void validate_plan_structure(const CyclePlan& plan, const ValidatedParams& p,
                             bool allow_no_registration = false);

/// Plan with both slot durations pinned to their minimum.
CyclePlan make_min_plan(int n, int w, std::int64_t f_n, std::int64_t f_r, std::int64_t k_n,
                        std::int64_t k_r, const ValidatedParams& p);

} // namespace ponplan
