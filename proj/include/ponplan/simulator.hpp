// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ponplan/delay_analysis.hpp"
#include "ponplan/model.hpp"
#include "ponplan/redistribution.hpp"
#include "ponplan/slotting.hpp"

namespace ponplan {

enum class CycleType { kRegistration, kNonRegistration };

const char* to_string(CycleType t);

/// One granted slot as seen by one ONU.
struct SlotRecord {
  double t_start = 0.0;
  int wavelength = 0;     // physical wavelength carrying the slot
  CycleType type = CycleType::kNonRegistration;
  int super_cycle = 0;    // 0 is the priming cycle
  std::int64_t cycle = 0; // index within its phase
  std::int64_t frames_served = 0;
  std::int64_t queue_after = 0; // frames
  double max_delay = 0.0;       // age of the oldest frame served, 0 if none
};

struct OnuTrace {
  OnuId onu;
  int i_r = 0;
  int w_r = 0;
  std::vector<SlotRecord> slots; // chronological
};

struct SimTrace {
  double frame_interval = 0.0;
  std::vector<OnuTrace> onus; // enumerate_assignments order
  double max_delay = 0.0;
  CycleType max_delay_type = CycleType::kNonRegistration;
  std::int64_t max_delay_cycle = 0;
  int max_delay_super_cycle = 0;
  // Largest delay seen in a last-registration or first-non-registration slot.
  double max_dominant_delay = 0.0;
  // Queue (frames, summed over ONUs) after each ONU's last non-registration
  // slot of every super-cycle; index 0 is super-cycle 1.
  std::vector<std::int64_t> end_queue;
};

struct SimOptions {
  // Precede super-cycle 1 with one non-registration cycle so that the first
  // registration phase already starts from a drained, regular timeline.
  bool prime = true;
};

/// Frame-level replay of `super_cycles` repetitions of the plan. Each ONU
/// completes an alpha-bit frame every alpha/R_C seconds; at each slot start
/// the oldest queued frames (up to f of the cycle type) leave. Frames that
/// complete exactly at a slot start wait for the next slot.
///
/// k_r = 0 is accepted and gives steady non-registration operation.
/// Throws std::logic_error if two slots overlap on a wavelength.
SimTrace simulate(const CyclePlan& plan, const ValidatedParams& p, int super_cycles,
                  const SimOptions& opts = {});

struct Mismatch {
  OnuId onu;
  int super_cycle = 0;
  CycleType type = CycleType::kNonRegistration;
  std::int64_t cycle = 0;
  std::string quantity; // "queue", "delay", "d_reg_last" or "d_nr_first"
  double simulated = 0.0;
  double analytic = 0.0;
};

struct ComparisonReport {
  bool pass = true;
  double tolerance = 0.0;
  double max_delay_error = 0.0;
  double max_queue_error = 0.0;
  std::size_t slots_compared = 0;
  std::size_t mismatch_count = 0;
  std::vector<Mismatch> mismatches; // first few only
};

/// Check every slot of super-cycles >= from_super_cycle against the closed
/// forms: delay = gap + previous backlog, queue = max{0, B}. Tolerance is
/// two frame intervals (one for arrival, one for service quantization).
ComparisonReport compare_with_analysis(const SimTrace& trace,
                                       const std::vector<DelayProfile>& profiles,
                                       const ValidatedParams& p, int from_super_cycle = 2,
                                       int to_super_cycle = -1);

std::string describe(const Mismatch& m);

} // namespace ponplan
