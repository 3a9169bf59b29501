// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

// ponplan: plan, check and simulate redistributed-registration TWDM-PON
// fronthaul schedules.

#include <algorithm>
#include <exception>
#include <iostream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "ponplan/delay_analysis.hpp"
#include "ponplan/io.hpp"
#include "ponplan/miqp.hpp"
#include "ponplan/model.hpp"
#include "ponplan/planner.hpp"
#include "ponplan/redistribution.hpp"
#include "ponplan/simulator.hpp"
#include "ponplan/sweep.hpp"

namespace {

using namespace ponplan;

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kVerifyFailed = 3 };

struct Globals {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::string verify = "simulate";
  std::vector<std::string> overrides;
};

ValidatedParams load_params(const Globals& g) {
  SystemParams p;
  if (!g.config.empty()) p = load_config(g.config, p);
  for (const auto& kv : g.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    apply_param(p, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return validate_params(p);
}

// Key-value text goes to stdout, the tabular record to --out when given.
void print_kv(std::ostream& os, const char* key, const std::string& value) {
  os << key << " = " << value << "\n";
}

int run_map(const Globals& g, int n, int w) {
  validate_topology({n, w});
  Table t;
  t.columns = {"lambda", "i_n", "i_r", "w_r"};
  for (const auto& a : enumerate_assignments(n, w))
    t.rows.push_back({std::int64_t{a.onu.lambda}, std::int64_t{a.onu.i_n}, std::int64_t{a.i_r},
                      std::int64_t{a.w_r}});
  for (const auto& v : vacant_cells(n, w))
    t.rows.push_back({Cell{}, Cell{}, std::int64_t{v.i_r}, std::int64_t{v.w_r}});
  emit_to(t, parse_format(g.format), g.out);
  return kOk;
}

void print_bound(std::ostream& os, const ValidatedParams& p, double t_reg, double t_c) {
  const double bound = standard_epon_delay_bound(t_reg, t_c);
  print_kv(os, "standard_epon_delay_bound_s", format_sig9(bound));
  print_kv(os, "d_b_s", format_sig9(p->d_b_s));
  os << "# a quiet registration window of " << format_sig9(t_reg) << " s plus a "
     << format_sig9(t_c) << " s cycle gives " << format_sig9(bound) << " s, which "
     << (bound > p->d_b_s ? "exceeds" : "fits within") << " the delay budget D_b = "
     << format_sig9(p->d_b_s) << " s\n";
}

int run_bound(const ValidatedParams& p, double t_reg, double t_c) {
  print_bound(std::cout, p, t_reg, t_c);
  return standard_epon_delay_bound(t_reg, t_c) > p->d_b_s ? kOk : kNegative;
}

struct SolveArgs {
  int w = 2;
  bool baseline = false;
  bool exact_gap = false;
  std::string export_miqp;
  int miqp_n = 0;
};

int run_solve(const Globals& g, const SolveArgs& a) {
  const ValidatedParams p = load_params(g);
  SearchOptions opts;
  opts.exact_gap = a.exact_gap;
  const PlanResult r = solve(a.w, p, opts);

  Verification ver;
  if (r.plan) ver = verify_plan(*r.plan, p, parse_verify_mode(g.verify));

  std::ostream& os = std::cout;
  print_kv(os, "n_star", std::to_string(r.n_star));
  print_kv(os, "total_proposed", std::to_string(r.total_proposed));
  if (r.plan) {
    write_plan(os, *r.plan);
    print_kv(os, "n_r", std::to_string(r.plan->n_r()));
    print_kv(os, "window_s", format_sig9(r.plan->window()));
    print_kv(os, "gap_s", format_sig9(r.plan->gap()));
    const FeasibilityReport rep = check_plan(*r.plan, p);
    print_kv(os, "max_pair_delay_s", format_sig9(rep.max_pair_delay));
  }
  if (a.baseline) {
    print_kv(os, "n_baseline", std::to_string(r.n_baseline));
    print_kv(os, "total_baseline", std::to_string(r.total_baseline));
    print_kv(os, "gain_pct", r.gain.defined ? format_sig9(r.gain.pct) : "undefined");
  }
  print_kv(os, "search_iterations", std::to_string(r.stats.iterations));
  print_kv(os, "search_candidates", std::to_string(r.stats.candidates));
  print_kv(os, "verify", g.verify);
  print_kv(os, "verified", r.plan ? (ver.ok ? "true" : "false") : "n/a");
  if (!ver.ok) os << "# verification failed: " << ver.detail << "\n";
  if (r.plan) print_bound(os, p, p->t_reg_s, r.plan->t_cn());

  if (!g.out.empty()) {
    SweepRow row{a.w, "solve", r, r.plan ? (ver.ok ? "ok" : "verify_failed: " + ver.detail)
                                         : "no_plan"};
    emit_to(sweep_table({row}), parse_format(g.format), g.out);
  }
  if (!a.export_miqp.empty()) {
    const int n = a.miqp_n > 0 ? a.miqp_n : (r.n_star > 0 ? r.n_star : n_max(p));
    export_miqp_file(a.export_miqp, n, a.w, p);
  }
  if (!r.plan) return kNegative;
  return ver.ok ? kOk : kVerifyFailed;
}

int run_analyze(const Globals& g, const std::string& plan_path) {
  const ValidatedParams p = load_params(g);
  const CyclePlan plan = load_plan(plan_path);
  validate_plan_structure(plan, p);
  const FeasibilityReport rep = check_plan(plan, p);
  Table t;
  t.columns = {"lambda", "i_n", "i_r", "d_reg_last_s", "d_nr_first_s", "b_nr_last_s", "verdict"};
  for (const auto& o : rep.onus)
    t.rows.push_back({std::int64_t{o.onu.lambda}, std::int64_t{o.onu.i_n}, std::int64_t{o.i_r},
                      o.d_reg_last, o.d_nr_first, o.b_nr_last,
                      std::string(o.ok ? "ok" : "violates")});
  emit_to(t, parse_format(g.format), g.out);
  std::cerr << "plan verdict: " << describe_violations(rep.violations) << "\n";
  return rep.feasible ? kOk : kNegative;
}

int run_simulate(const Globals& g, const std::string& plan_path, int cycles,
                 const std::string& trace_path) {
  const ValidatedParams p = load_params(g);
  const CyclePlan plan = load_plan(plan_path);
  validate_plan_structure(plan, p);
  const SimTrace tr = simulate(plan, p, cycles);

  struct Row {
    const SlotRecord* s;
    const OnuTrace* o;
  };
  std::vector<Row> all;
  for (const auto& o : tr.onus)
    for (const auto& s : o.slots) all.push_back({&s, &o});
  std::sort(all.begin(), all.end(), [](const Row& a, const Row& b) {
    return std::tie(a.s->t_start, a.s->wavelength, a.o->onu.lambda, a.o->onu.i_n) <
           std::tie(b.s->t_start, b.s->wavelength, b.o->onu.lambda, b.o->onu.i_n);
  });
  Table t;
  t.columns = {"t_start_s", "wavelength", "lambda", "i_n", "cycle_type", "frames_served",
               "queue_after_frames", "max_delay_s"};
  t.rows.reserve(all.size());
  for (const auto& r : all)
    t.rows.push_back({r.s->t_start, std::int64_t{r.s->wavelength}, std::int64_t{r.o->onu.lambda},
                      std::int64_t{r.o->onu.i_n}, std::string(to_string(r.s->type)),
                      r.s->frames_served, r.s->queue_after, r.s->max_delay});
  const std::string dest = trace_path.empty() ? g.out : trace_path;
  if (!dest.empty()) emit_to(t, parse_format(g.format), dest);

  // Keep stdout clean for the trace when no destination was given.
  std::ostream& os = dest.empty() ? std::cerr : std::cout;
  if (dest.empty()) emit_to(t, parse_format(g.format), "-");
  print_kv(os, "super_cycles", std::to_string(cycles));
  print_kv(os, "max_delay_s", format_sig9(tr.max_delay));
  print_kv(os, "max_delay_location", std::string(to_string(tr.max_delay_type)) + " cycle " +
                                         std::to_string(tr.max_delay_cycle));
  std::string ends;
  for (auto q : tr.end_queue) ends += (ends.empty() ? "" : ",") + std::to_string(q);
  print_kv(os, "end_queue_frames", ends);

  const VerifyMode mode = parse_verify_mode(g.verify);
  if (mode == VerifyMode::kOff || plan.k_r == 0) return kOk;
  const ComparisonReport cmp =
      compare_with_analysis(tr, delay_profiles(plan, p), p, std::min(2, cycles));
  print_kv(os, "comparison", cmp.pass ? "pass" : "fail");
  print_kv(os, "max_delay_error_s", format_sig9(cmp.max_delay_error));
  print_kv(os, "max_queue_error_s", format_sig9(cmp.max_queue_error));
  for (const auto& m : cmp.mismatches) os << "# " << describe(m) << "\n";
  return cmp.pass ? kOk : kVerifyFailed;
}

struct SweepArgs {
  std::string panel = "default";
  int w_min = 2;
  int w_max = 8;
  bool exact_gap = false;
};

int run_sweep_cmd(const Globals& g, const SweepArgs& a) {
  SystemParams base = load_params(g).raw();
  SweepSpec spec = panel_spec(a.panel, base);
  spec.w_min = a.w_min;
  spec.w_max = a.w_max;
  spec.search.exact_gap = a.exact_gap;
  spec.verify = parse_verify_mode(g.verify);
  const auto rows = run_sweep(spec);
  emit_to(sweep_table(rows), parse_format(g.format), g.out);
  for (const auto& r : rows)
    if (r.status != "ok" && r.status != "no_plan") return kVerifyFailed;
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity planning for TWDM-PON fronthaul with redistributed registration"};
  app.require_subcommand(1);
  Globals g;
  auto add_globals = [&g](CLI::App& a) {
    a.add_option("--config", g.config, "key = value parameter file")->check(CLI::ExistingFile);
    a.add_option("--out", g.out, "output file (default: stdout)");
    a.add_option("--format", g.format, "table format")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    a.add_option("--verify", g.verify, "plan verification")
        ->check(CLI::IsMember({"off", "analytic", "simulate"}));
    a.add_option("--set", g.overrides, "parameter override key=value (repeatable)");
  };
  add_globals(app);

  int n = 0;
  int w = 0;
  auto* map = app.add_subcommand("map", "registration-slot assignment grid");
  map->add_option("--n", n, "ONUs per wavelength")->required();
  map->add_option("--w", w, "wavelengths")->required();

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "maximize ONUs per wavelength for W");
  solve_cmd->add_option("--w", sa.w, "wavelengths")->required();
  solve_cmd->add_flag("--baseline", sa.baseline, "compare with a dedicated registration wavelength");
  solve_cmd->add_option("--export-miqp", sa.export_miqp, "write the MIQP model (LP format)");
  solve_cmd->add_option("--miqp-n", sa.miqp_n, "N for the exported model (default: N*)");
  solve_cmd->add_flag("--exact-gap", sa.exact_gap, "stretch the gap as close to T_gap as possible");

  std::string plan_path;
  auto* analyze = app.add_subcommand("analyze", "per-ONU worst-case delays of a plan");
  analyze->add_option("--plan", plan_path, "plan file")->required()->check(CLI::ExistingFile);

  int cycles = 3;
  std::string trace_path;
  auto* sim = app.add_subcommand("simulate", "frame-level replay of a plan");
  sim->add_option("--plan", plan_path, "plan file")->required()->check(CLI::ExistingFile);
  sim->add_option("--cycles", cycles, "super-cycles")->check(CLI::PositiveNumber);
  sim->add_option("--trace", trace_path, "per-slot trace output");

  SweepArgs swa;
  auto* sweep = app.add_subcommand("sweep", "gain versus W over a parameter panel");
  sweep->add_option("--panel", swa.panel, "variant set")
      ->check(CLI::IsMember({"default", "a", "b", "c"}));
  sweep->add_option("--w-min", swa.w_min, "smallest W");
  sweep->add_option("--w-max", swa.w_max, "largest W");
  sweep->add_flag("--exact-gap", swa.exact_gap, "stretch the gap as close to T_gap as possible");

  double t_reg = -1.0;
  double t_c = 100e-6;
  auto* bound = app.add_subcommand("bound", "delay floor of a standard quiet registration window");
  bound->add_option("--t-reg", t_reg, "registration window, s (default: t_reg_s)");
  bound->add_option("--t-c", t_c, "cycle length, s");

  for (auto* sub : {map, solve_cmd, analyze, sim, sweep, bound}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*map) return run_map(g, n, w);
    if (*solve_cmd) return run_solve(g, sa);
    if (*analyze) return run_analyze(g, plan_path);
    if (*sim) return run_simulate(g, plan_path, cycles, trace_path);
    if (*sweep) return run_sweep_cmd(g, swa);
    if (*bound) {
      const ValidatedParams p = load_params(g);
      return run_bound(p, t_reg < 0 ? p->t_reg_s : t_reg, t_c);
    }
  } catch (const std::exception& e) {
    std::cerr << "ponplan: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
