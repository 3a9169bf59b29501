// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Usage: ponplan_acceptance <path-to-ponplan> <scratch-dir>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "ponplan/delay_analysis.hpp"
#include "ponplan/planner.hpp"
#include "ponplan/redistribution.hpp"
#include "ponplan/simulator.hpp"
#include "ponplan/sweep.hpp"

using namespace ponplan;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string cli;
std::string scratch;

int run(const std::string& cmd, std::string* out = nullptr) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  std::string text;
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) text.append(buf, got);
  const int status = pclose(pipe);
  if (out) *out = text;
  return status;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<SweepRow> sweep_rows(const std::string& panel) {
  SweepSpec spec = panel_spec(panel);
  spec.verify = VerifyMode::kSimulate;
  return run_sweep(spec);
}

std::string gains(const std::vector<SweepRow>& rows, const std::string& variant) {
  std::string s;
  for (const auto& r : rows) {
    if (r.variant_id != variant) continue;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%d:%.2f", s.empty() ? "" : " ", r.w, r.result.gain.pct);
    s += buf;
  }
  return s;
}

// 1. Closed forms against the frame-level replay for every default plan.
Outcome formula_vs_simulation() {
  const auto p = default_params();
  const double tol = 2.0 * p.frame_interval();
  Outcome o;
  double worst_err = 0.0;
  std::size_t onus = 0;
  for (int w = 2; w <= 8; ++w) {
    const PlanResult r = solve(w, p);
    if (!r.plan) {
      o.pass = false;
      o.detail += " W=" + std::to_string(w) + ":no plan";
      continue;
    }
    const auto profiles = delay_profiles(*r.plan, p);
    const SimTrace tr = simulate(*r.plan, p, 3);
    const ComparisonReport cmp = compare_with_analysis(tr, profiles, p);
    worst_err = std::max({worst_err, cmp.max_delay_error, cmp.max_queue_error});
    onus += tr.onus.size();
    if (!cmp.pass) {
      o.pass = false;
      o.detail += " W=" + std::to_string(w) + ":" +
                  (cmp.mismatches.empty() ? "mismatch" : describe(cmp.mismatches.front()));
    }
    // The global maximum must sit in the last registration or first
    // non-registration slot.
    if (tr.max_dominant_delay < tr.max_delay) {
      o.pass = false;
      o.detail += " W=" + std::to_string(w) + ":max delay outside the dominant slots";
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu ONUs, worst error %.3g s vs tolerance %.3g s", onus,
                worst_err, tol);
  o.detail = buf + o.detail;
  return o;
}

// 2. Exact search against exhaustive enumeration on a scaled system.
Outcome brute_force_equivalence() {
  SystemParams raw;
  raw.r_e_bps = 1e9;
  raw.r_c_bps = 200e6;
  raw.d_b_s = 50e-6;
  raw.t_reg_s = 20e-6;
  raw.t_gap_s = 1e-3;
  const auto p = validate_params(raw);
  oracle::BruteForceBox box;
  box.f_max = 2000;
  box.k_n_max = 64;
  box.k_r_max = 8;
  Outcome o;
  int points = 0;
  int disagreements = 0;
  std::string verdicts;
  // N = 5 = n_max lies past the stated grid; it adds an infeasible point.
  for (int w : {2, 3}) {
    for (int n = 1; n <= std::max(4, n_max(p)); ++n) {
      const bool ours = inner_feasible(n, w, p).has_value();
      const bool brute = oracle::brute_force_feasible(n, w, raw, box).has_value();
      ++points;
      verdicts += std::string(" (") + std::to_string(n) + "," + std::to_string(w) + ")=" +
                  (ours ? "F" : "I") + (brute ? "F" : "I");
      if (ours != brute) ++disagreements;
    }
  }
  o.pass = disagreements == 0;
  o.detail = std::to_string(points) + " points, " + std::to_string(disagreements) +
             " disagreements;" + verdicts;
  return o;
}

// 3. Assignment grids of the worked examples and exhaustive injectivity.
Outcome redistribution_exactness() {
  Outcome o;
  auto grid_ok = [](int n, int w, int slots, int vacant) {
    const auto all = enumerate_assignments(n, w);
    std::set<std::pair<int, int>> cells;
    int rows = 0;
    for (const auto& a : all) {
      cells.insert({a.i_r, a.w_r});
      rows = std::max(rows, a.i_r + 1);
    }
    return static_cast<int>(all.size()) == n * w && cells.size() == all.size() &&
           compute_nr(n, w) == slots && vacant_slot_count(n, w) == vacant &&
           static_cast<int>(vacant_cells(n, w).size()) == vacant && rows == slots;
  };
  const bool fig5 = grid_ok(4, 3, 6, 0);
  const bool fig6 = grid_ok(3, 3, 5, 1) && vacant_cells(3, 3).front().i_r == 4 &&
                    vacant_cells(3, 3).front().w_r == 1;
  bool injective = true;
  for (int w = 2; w <= 16 && injective; ++w) {
    for (int n = 1; n <= 64 && injective; ++n) {
      std::set<std::pair<int, int>> cells;
      for (const auto& a : enumerate_assignments(n, w)) cells.insert({a.i_r, a.w_r});
      injective = cells.size() == static_cast<std::size_t>(n * w);
    }
  }
  o.pass = fig5 && fig6 && injective;
  o.detail = std::string("12 ONUs on 6x2: ") + (fig5 ? "ok" : "wrong") +
             ", 9 ONUs on 5x2 with 1 vacancy: " + (fig6 ? "ok" : "wrong") +
             ", injective for N<=64, W<=16: " + (injective ? "yes" : "no");
  return o;
}

// 4. Qualitative trends over the panels.
Outcome trend_reproduction() {
  Outcome o;
  const auto b = sweep_rows("b");
  const auto c = sweep_rows("c");
  const auto d = sweep_rows("default");
  const auto b_spec = panel_spec("b");
  const auto c_spec = panel_spec("c");

  auto gain_of = [](const std::vector<SweepRow>& rows, const std::string& v, int w) {
    for (const auto& r : rows)
      if (r.variant_id == v && r.w == w) return r.result.gain.pct;
    return -1e9;
  };
  bool i = true, ii = true, iii = true, iv = true;
  for (int w = 2; w <= 8; ++w) {
    i = i && gain_of(b, b_spec.variants[1].id, w) >= gain_of(b, b_spec.variants[0].id, w);
    ii = ii && gain_of(c, c_spec.variants[0].id, w) >= gain_of(c, c_spec.variants[1].id, w);
  }
  std::string iii_breaks;
  for (int w = 5; w <= 8; ++w) {
    if (gain_of(d, "default", w) > gain_of(d, "default", w - 1)) {
      iii = false;
      iii_breaks += " W=" + std::to_string(w - 1) + "->" + std::to_string(w);
    }
  }
  for (const auto* rows : {&b, &c, &d})
    for (const auto& r : *rows)
      iv = iv && r.status == "ok" && r.result.total_proposed >= r.result.total_baseline;

  o.pass = i && ii && iii && iv;
  auto mark = [](bool ok) { return ok ? "ok" : "FAIL"; };
  o.detail = std::string("(i) ") + mark(i) + " (ii) " + mark(ii) + " (iii) " + mark(iii) +
             iii_breaks + " (iv) " + mark(iv) + "; default gains [" + gains(d, "default") +
             "]; D_b=100us [" + gains(b, b_spec.variants[0].id) + "]; D_b=150us [" +
             gains(b, b_spec.variants[1].id) + "]; T_reg=400us [" +
             gains(c, c_spec.variants[1].id) + "]";
  return o;
}

// 5. Headline gain bracket.
Outcome headline_gain() {
  const auto d = sweep_rows("default");
  double best = -1e9;
  int at = 0;
  for (const auto& r : d) {
    if (r.result.gain.defined && r.result.gain.pct > best) {
      best = r.result.gain.pct;
      at = r.w;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max gain %.2f%% at W=%d (bracket [40, 100])", best, at);
  return {best >= 40.0 && best <= 100.0, buf};
}

// 6. Quiet-window delay floor, in the library and as the CLI reports it.
Outcome quiet_window_bound() {
  const double bound = standard_epon_delay_bound(250e-6, 100e-6);
  std::string out;
  const int rc = run(cli + " bound --t-reg 250e-6 --t-c 100e-6", &out);
  const bool says = out.find("exceeds the delay budget D_b = 0.00015") != std::string::npos;
  Outcome o;
  o.pass = bound == 350e-6 && rc == 0 && says;
  o.detail = std::string("bound ") + format_sig9(bound) + " s; CLI " +
             (says ? "reports it exceeds D_b = 150 us" : "did not report the excess");
  return o;
}

// 7. Every accepted plan drains at each super-cycle end.
Outcome drain_property() {
  Outcome o;
  int plans = 0;
  for (const char* panel : {"default", "a", "b", "c"}) {
    const auto spec = panel_spec(panel);
    SweepSpec quick = spec;
    quick.verify = VerifyMode::kOff;
    for (const auto& r : run_sweep(quick)) {
      if (!r.result.plan) continue;
      const Variant* v = nullptr;
      for (const auto& cand : spec.variants)
        if (cand.id == r.variant_id) v = &cand;
      const auto p = validate_params(v->params);
      const SimTrace tr = simulate(*r.result.plan, p, 3);
      ++plans;
      for (std::size_t c = 0; c < tr.end_queue.size(); ++c) {
        if (tr.end_queue[c] != 0) {
          o.pass = false;
          o.detail += std::string(" ") + panel + "/" + r.variant_id + "/W=" +
                      std::to_string(r.w) + " super-cycle " + std::to_string(c + 1) + ": " +
                      std::to_string(tr.end_queue[c]) + " frames";
        }
      }
    }
  }
  o.detail = std::to_string(plans) + " plans over 3 super-cycles" +
             (o.pass ? ", all end queues zero" : ";" + o.detail);
  return o;
}

// 8. Repeated sweeps are byte-identical.
Outcome determinism() {
  const std::string a = scratch + "/acceptance_sweep_1.csv";
  const std::string b = scratch + "/acceptance_sweep_2.csv";
  const int ra = run(cli + " sweep --panel a --out " + a);
  const int rb = run(cli + " sweep --panel a --out " + b);
  const std::string x = slurp(a);
  const std::string y = slurp(b);
  Outcome o;
  o.pass = ra == 0 && rb == 0 && !x.empty() && x == y;
  o.detail = std::to_string(x.size()) + " bytes, " + (x == y ? "identical" : "different");
  return o;
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <ponplan> <scratch-dir>\n", argv[0]);
    return 2;
  }
  cli = argv[1];
  scratch = argv[2];

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"formula-vs-simulation", formula_vs_simulation},
      {"brute-force solver equivalence", brute_force_equivalence},
      {"redistribution exactness", redistribution_exactness},
      {"trend reproduction", trend_reproduction},
      {"headline gain", headline_gain},
      {"quiet-window delay bound", quiet_window_bound},
      {"drain property", drain_property},
      {"determinism", determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("AC%zu %s %s: %s (%.2f s)\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, o.detail.c_str(), dt);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
