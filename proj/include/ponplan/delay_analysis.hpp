// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ponplan/model.hpp"
#include "ponplan/redistribution.hpp"
#include "ponplan/slotting.hpp"

namespace ponplan {

/// Inter-slot gaps over one super-cycle. reg[k] is the gap before the ONU's
/// k-th registration slot, nr[k] before its k-th non-registration slot.
struct InterSlotGaps {
  std::vector<double> reg;
  std::vector<double> nr;
};

/// Time-equivalent backlog left after each slot (bits / R_C). Registration
/// values are true queue sizes; non-registration values keep the negative
/// values of the linear drain formula.
struct BacklogTrace {
  std::vector<double> reg;
  std::vector<double> nr;
};

struct WorstDelays {
  double d_reg_last = 0.0;
  double d_nr_first = 0.0;
};

struct DelayProfile {
  OnuId onu;
  int i_r = 0;
  std::vector<double> gaps_reg;
  std::vector<double> gaps_nr;
  std::vector<double> backlog_reg;
  std::vector<double> backlog_nr;
  double d_reg_last = 0.0;
  double d_nr_first = 0.0;
};

InterSlotGaps inter_slot_gaps(OnuId onu, const CyclePlan& plan);
BacklogTrace backlog_trace(OnuId onu, const CyclePlan& plan, const ValidatedParams& p);
WorstDelays worst_delays(OnuId onu, const CyclePlan& plan, const ValidatedParams& p);
DelayProfile delay_profile(OnuId onu, const CyclePlan& plan, const ValidatedParams& p);
std::vector<DelayProfile> delay_profiles(const CyclePlan& plan, const ValidatedParams& p);

// ---------------------------------------------------------------------------
// Closed-form kernel. check_plan and the planner search both evaluate
// candidates through evaluate_onu so their verdicts cannot drift apart.

/// Plan-wide constants used by every per-ONU evaluation.
struct PlanTerms {
  int n = 0;
  int n_r = 0;
  std::int64_t k_n = 1;
  std::int64_t k_r = 1;
  double t_sn = 0.0;
  double t_sr = 0.0;
  double t_cn = 0.0;
  double t_cr = 0.0;
  double serve_n = 0.0; // f_n * alpha / R_C
  double serve_r = 0.0; // f_r * alpha / R_C
};

PlanTerms plan_terms(const CyclePlan& plan, const ValidatedParams& p);

struct OnuScalars {
  double d_reg_last = 0.0;
  double d_nr_first = 0.0;
  double b_nr_first = 0.0;     // B_nr[0]
  double b_nr_last = 0.0;      // B_nr[k_n-1]
  double d_intermediate = 0.0; // max delay over every other slot of the super-cycle
};

OnuScalars evaluate_onu(int i_n, int i_r, const PlanTerms& t);

// ---------------------------------------------------------------------------

enum Violation : unsigned {
  kViolationNone = 0,
  kViolationWindow = 1u << 0,       // k_r * T_cr < T_reg
  kViolationGap = 1u << 1,          // k_n * T_cn > T_gap
  kViolationCapacity = 1u << 2,     // f_n * alpha / R_C < T_cn
  kViolationDelay = 1u << 3,        // d_reg_last or d_nr_first > D_b
  kViolationIntermediate = 1u << 4, // some other slot delay > D_b
  kViolationDrain = 1u << 5,        // B_nr[k_n-1] > 0
};

std::string describe_violations(unsigned mask);

struct CheckOptions {
  bool enforce_window = true;
  bool enforce_gap = true;
};

struct OnuReport {
  OnuId onu;
  int i_r = 0;
  double d_reg_last = 0.0;
  double d_nr_first = 0.0;
  double b_nr_last = 0.0;
  double d_intermediate = 0.0;
  bool ok = true;
};

struct FeasibilityReport {
  bool feasible = false;
  unsigned violations = kViolationNone;
  double window = 0.0;
  double gap = 0.0;
  double max_pair_delay = 0.0;
  double max_intermediate_delay = 0.0;
  double max_b_nr_last = 0.0;
  std::vector<OnuReport> onus; // one per ONU, in enumerate_assignments order
};

/// Verdict FEASIBLE iff window >= T_reg, gap <= T_gap, non-registration slots
/// keep up with arrivals, every ONU's delays are within D_b and every ONU has
/// drained by the end of the non-registration phase.
FeasibilityReport check_plan(const CyclePlan& plan, const ValidatedParams& p,
                             const CheckOptions& opts = {});

} // namespace ponplan
