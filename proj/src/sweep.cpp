// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "ponplan/sweep.hpp"

#include <cstdint>
#include <stdexcept>

#include "ponplan/delay_analysis.hpp"
#include "ponplan/simulator.hpp"

namespace ponplan {

VerifyMode parse_verify_mode(const std::string& s) {
  if (s == "off") return VerifyMode::kOff;
  if (s == "analytic") return VerifyMode::kAnalytic;
  if (s == "simulate") return VerifyMode::kSimulate;
  throw std::invalid_argument("unknown verify mode '" + s + "' (off, analytic or simulate)");
}

Verification verify_plan(const CyclePlan& plan, const ValidatedParams& p, VerifyMode mode,
                         int super_cycles) {
  if (mode == VerifyMode::kOff) return {};
  const FeasibilityReport rep = check_plan(plan, p);
  if (!rep.feasible) return {false, "check_plan: " + describe_violations(rep.violations)};
  if (mode == VerifyMode::kAnalytic) return {};

  const SimTrace trace = simulate(plan, p, super_cycles);
  const ComparisonReport cmp = compare_with_analysis(trace, delay_profiles(plan, p), p);
  if (!cmp.pass) {
    std::string d = "simulation mismatch";
    if (!cmp.mismatches.empty()) d += ": " + describe(cmp.mismatches.front());
    return {false, d};
  }
  for (std::size_t c = 0; c < trace.end_queue.size(); ++c) {
    if (trace.end_queue[c] != 0)
      return {false, "simulation: super-cycle " + std::to_string(c + 1) + " ends with " +
                         std::to_string(trace.end_queue[c]) + " queued frames"};
  }
  if (trace.max_delay > p->d_b_s + 2.0 * p.frame_interval())
    return {false, "simulation: max delay " + format_sig9(trace.max_delay) + " s exceeds budget"};
  return {};
}

SweepSpec panel_spec(const std::string& panel, const SystemParams& base) {
  SweepSpec spec;
  auto add = [&](std::string id, auto&& tweak) {
    SystemParams p = base;
    tweak(p);
    spec.variants.push_back({std::move(id), p});
  };
  if (panel == "default") {
    add("default", [](SystemParams&) {});
  } else if (panel == "a") {
    for (double r : {307.2e6, 614.4e6, 1228.8e6})
      add("r_c=" + format_sig9(r), [r](SystemParams& p) { p.r_c_bps = r; });
  } else if (panel == "b") {
    for (double d : {100e-6, 150e-6})
      add("d_b=" + format_sig9(d), [d](SystemParams& p) {
        p.t_reg_s = 150e-6;
        p.d_b_s = d;
      });
  } else if (panel == "c") {
    for (double t : {250e-6, 400e-6})
      add("t_reg=" + format_sig9(t), [t](SystemParams& p) {
        p.d_b_s = 150e-6;
        p.t_reg_s = t;
      });
  } else {
    throw std::invalid_argument("unknown panel '" + panel + "' (default, a, b or c)");
  }
  return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.w_min < 2 || spec.w_max > 32 || spec.w_min > spec.w_max)
    throw std::invalid_argument("sweep: W range must lie within [2, 32]");
  for (const auto& v : spec.variants) validate_params(v.params);

  const int per_variant = spec.w_max - spec.w_min + 1;
  const auto count = static_cast<std::int64_t>(spec.variants.size()) * per_variant;
  std::vector<SweepRow> rows(static_cast<std::size_t>(count));

  // Each point runs its inner search serially; the points themselves are
  // the unit of parallel work.
  SearchOptions search = spec.search;
  search.parallel = false;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto& v = spec.variants[static_cast<std::size_t>(i / per_variant)];
    SweepRow& row = rows[static_cast<std::size_t>(i)];
    row.w = spec.w_min + static_cast<int>(i % per_variant);
    row.variant_id = v.id;
    try {
      const ValidatedParams p = validate_params(v.params);
      row.result = solve(row.w, p, search);
      if (!row.result.plan) {
        row.status = "no_plan";
      } else {
        const Verification ver = verify_plan(*row.result.plan, p, spec.verify);
        row.status = ver.ok ? "ok" : "verify_failed: " + ver.detail;
      }
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
  }
  return rows;
}

Table sweep_table(const std::vector<SweepRow>& rows) {
  Table t;
  t.columns = {"w",       "variant_id", "n_star", "n_baseline", "total_proposed",
               "total_baseline", "gain_pct", "window_s", "gap_s", "f_n",
               "f_r",     "k_n",        "k_r",    "t_sn_s",     "t_sr_s",
               "status"};
  for (const auto& r : rows) {
    const PlanResult& res = r.result;
    std::vector<Cell> row{std::int64_t{r.w},
                          r.variant_id,
                          std::int64_t{res.n_star},
                          std::int64_t{res.n_baseline},
                          res.total_proposed,
                          res.total_baseline,
                          res.gain.defined ? Cell{res.gain.pct} : Cell{}};
    if (res.plan) {
      const CyclePlan& pl = *res.plan;
      row.insert(row.end(), {pl.window(), pl.gap(), pl.f_n, pl.f_r, pl.k_n, pl.k_r, pl.t_sn,
                             pl.t_sr});
    } else {
      row.resize(row.size() + 8);
    }
    row.push_back(r.status);
    t.rows.push_back(std::move(row));
  }
  return t;
}

} // namespace ponplan
