// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ponplan/io.hpp"
#include "ponplan/model.hpp"
#include "ponplan/planner.hpp"

namespace ponplan {

enum class VerifyMode { kOff, kAnalytic, kSimulate };
VerifyMode parse_verify_mode(const std::string& s);

struct Verification {
  bool ok = true;
  std::string detail; // empty when ok
};

/// analytic: check_plan. simulate: additionally replay `super_cycles`
/// super-cycles, compare against the closed forms, and require drained
/// super-cycle ends and a max delay within D_b + 2 alpha/R_C.
Verification verify_plan(const CyclePlan& plan, const ValidatedParams& p, VerifyMode mode,
                         int super_cycles = 3);

struct Variant {
  std::string id;
  SystemParams params;
};

struct SweepSpec {
  std::vector<Variant> variants;
  int w_min = 2;
  int w_max = 8;
  SearchOptions search;
  VerifyMode verify = VerifyMode::kSimulate;
};

/// Built-in variant sets around `base`: "default"; "a" (R_C in 307.2,
/// 614.4, 1228.8 Mb/s); "b" (T_reg = 150 us, D_b in 100, 150 us); "c"
/// (D_b = 150 us, T_reg in 250, 400 us).
SweepSpec panel_spec(const std::string& panel, const SystemParams& base = {});

struct SweepRow {
  int w = 0;
  std::string variant_id;
  PlanResult result;
  std::string status; // "ok", "no_plan", or the failure
};

/// One row per (variant, W), variants outer. Points run concurrently;
/// failures are recorded in the row and do not stop the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

Table sweep_table(const std::vector<SweepRow>& rows);

} // namespace ponplan
