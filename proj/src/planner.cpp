// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "ponplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "ponplan/redistribution.hpp"

namespace ponplan {

namespace {

struct RegCandidate {
  std::int64_t f_r = 1;
  std::int64_t k_r = 1;
  double t_sr = 0.0;
};

struct NrCandidate {
  std::int64_t f_n = 1;
  double t_sn = 0.0;
};

struct Found {
  CyclePlan plan;
  double window = 0.0;
};

// Ordering for the tie-break: shortest registration window, then shortest
// non-registration slot, then smaller counts.
bool better(const Found& a, const Found& b) {
  return std::tie(a.window, a.plan.t_sn, a.plan.f_r, a.plan.k_r, a.plan.t_sr) <
         std::tie(b.window, b.plan.t_sn, b.plan.f_r, b.plan.k_r, b.plan.t_sr);
}

// Smallest T_sr >= t_min with k_r * (N_r * T_sr) >= T_reg, evaluated exactly
// as CyclePlan::window does.
double stretched_slot(double t_min, std::int64_t k_r, int n_r, double t_reg) {
  double t = std::max(t_min, t_reg / (static_cast<double>(k_r) * n_r));
  while (static_cast<double>(k_r) * (n_r * t) < t_reg)
    t = std::nextafter(t, std::numeric_limits<double>::infinity());
  return t;
}

struct Search {
  int n = 0;
  int w = 0;
  int n_r = 0;
  const ValidatedParams* p = nullptr;
  const SearchOptions* opts = nullptr;
  std::vector<std::pair<int, int>> classes; // distinct (i_n, i_r)
  std::vector<NrCandidate> nr;
  std::vector<RegCandidate> reg;
};

Search prepare(int n, int w, const ValidatedParams& p, const SearchOptions& opts) {
  Search s;
  s.n = n;
  s.w = w;
  s.n_r = compute_nr(n, w);
  s.p = &p;
  s.opts = &opts;

  std::set<std::pair<int, int>> uniq;
  for (const auto& a : enumerate_assignments(n, w)) uniq.insert({a.onu.i_n, a.i_r});
  s.classes.assign(uniq.begin(), uniq.end());

  const double budget = p->d_b_s;
  const double frame_time = p.frame_interval();

  // Non-registration slots: the cycle must fit the budget (the ONU at i_n = 0
  // waits a whole cycle before its first registration slot) and keep up with
  // arrivals.
  for (std::int64_t f = 1;; ++f) {
    const double t_sn = min_slot_duration(f, p);
    if (n * t_sn > budget) break;
    if (static_cast<double>(f) * frame_time >= n * t_sn) s.nr.push_back({f, t_sn});
  }

  // Registration slots: a registration cycle must fit the budget (the ONU in
  // registration slot 0 waits a whole cycle before its next slot).
  for (std::int64_t f = 1;; ++f) {
    const double t_min = min_slot_duration(f, p);
    if (s.n_r * t_min > budget) break;
    std::int64_t k_min = 1;
    if (opts.check.enforce_window)
      k_min = std::max<std::int64_t>(
          1, static_cast<std::int64_t>(std::ceil(p->t_reg_s / (s.n_r * t_min))));
    for (std::int64_t k = 1; k <= k_min + opts.k_r_slack; ++k) {
      const double t_sr =
          opts.check.enforce_window ? stretched_slot(t_min, k, s.n_r, p->t_reg_s) : t_min;
      if (s.n_r * t_sr > budget) continue;
      s.reg.push_back({f, k, t_sr});
    }
  }
  return s;
}

// Shortest feasible non-registration slot for one registration candidate.
// Every delay term grows with T_sn, so the scan stops at the first delay
// violation.
std::optional<Found> scan(const Search& s, const RegCandidate& rc, std::int64_t& evals) {
  const ValidatedParams& p = *s.p;
  const double budget = p->d_b_s;

  CyclePlan plan;
  plan.n = s.n;
  plan.w = s.w;
  plan.f_r = rc.f_r;
  plan.k_r = rc.k_r;
  plan.t_sr = rc.t_sr;
  plan.k_n = 1;

  for (const auto& nc : s.nr) {
    ++evals;
    plan.f_n = nc.f_n;
    plan.t_sn = nc.t_sn;
    plan.k_n = 1;
    const PlanTerms t = plan_terms(plan, p);

    // With k_n = 1 the intermediate term leaves out the steady
    // non-registration slots, which are dominated once arrivals are served.
    double worst = 0.0;
    double b_nr_first = -std::numeric_limits<double>::infinity();
    for (const auto& [i_n, i_r] : s.classes) {
      const OnuScalars o = evaluate_onu(i_n, i_r, t);
      worst = std::max({worst, o.d_reg_last, o.d_nr_first, o.d_intermediate});
      b_nr_first = std::max(b_nr_first, o.b_nr_first);
    }
    if (worst > budget) break;

    const double drain = t.serve_n - t.t_cn;
    std::int64_t k_lo = 1;
    if (b_nr_first > 0.0) {
      if (!(drain > 0.0)) continue;
      k_lo = 1 + static_cast<std::int64_t>(std::ceil(b_nr_first / drain));
      while (b_nr_first - static_cast<double>(k_lo - 1) * drain > 0.0) ++k_lo;
      while (k_lo > 1 && b_nr_first - static_cast<double>(k_lo - 2) * drain <= 0.0) --k_lo;
    }

    std::int64_t k_hi = std::numeric_limits<std::int64_t>::max();
    if (s.opts->check.enforce_gap) {
      const double t_cn = plan.t_cn();
      k_hi = static_cast<std::int64_t>(std::floor(p->t_gap_s / t_cn));
      while (k_hi > 0 && static_cast<double>(k_hi) * t_cn > p->t_gap_s) --k_hi;
      while (static_cast<double>(k_hi + 1) * t_cn <= p->t_gap_s) ++k_hi;
    } else if (s.opts->exact_gap) {
      k_hi = k_lo;
    }
    if (k_lo > k_hi) continue;

    plan.k_n = s.opts->exact_gap ? k_hi : k_lo;
    if (!check_plan(plan, p, s.opts->check).feasible) continue;
    return Found{plan, plan.window()};
  }
  return std::nullopt;
}

std::optional<CyclePlan> pick(std::vector<std::optional<Found>>& found) {
  std::optional<Found> best;
  for (auto& f : found) {
    if (f && (!best || better(*f, *best))) best = std::move(f);
  }
  if (!best) return std::nullopt;
  return best->plan;
}

bool trivially_infeasible(int n, int w, const ValidatedParams& p) {
  validate_topology({n, w});
  return n > n_max(p);
}

} // namespace

int n_max(const ValidatedParams& p) {
  return static_cast<int>(std::floor(p->r_e_bps / p->r_c_bps));
}

std::optional<CyclePlan> inner_feasible_serial(int n, int w, const ValidatedParams& p,
                                               const SearchOptions& opts, SearchStats* stats) {
  if (trivially_infeasible(n, w, p)) return std::nullopt;
  const Search s = prepare(n, w, p, opts);
  std::vector<std::optional<Found>> found(s.reg.size());
  std::int64_t evals = 0;
  for (std::size_t i = 0; i < s.reg.size(); ++i) found[i] = scan(s, s.reg[i], evals);
  if (stats) stats->candidates += evals;
  return pick(found);
}

std::optional<CyclePlan> inner_feasible(int n, int w, const ValidatedParams& p,
                                        const SearchOptions& opts, SearchStats* stats) {
  if (!opts.parallel) return inner_feasible_serial(n, w, p, opts, stats);
  if (trivially_infeasible(n, w, p)) return std::nullopt;
  const Search s = prepare(n, w, p, opts);
  std::vector<std::optional<Found>> found(s.reg.size());
  std::int64_t evals = 0;
  const auto count = static_cast<std::int64_t>(s.reg.size());
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : evals)
  for (std::int64_t i = 0; i < count; ++i) {
    std::int64_t local = 0;
    found[static_cast<std::size_t>(i)] = scan(s, s.reg[static_cast<std::size_t>(i)], local);
    evals += local;
  }
  if (stats) stats->candidates += evals;
  return pick(found);
}

int solve_baseline(int w, const ValidatedParams& p) {
  if (w < 2) throw std::invalid_argument("solve_baseline: W >= 2 required");
  const double frame_time = p.frame_interval();
  for (int n = n_max(p); n >= 1; --n) {
    for (std::int64_t f = 1;; ++f) {
      const double t_s = min_slot_duration(f, p);
      if (n * t_s > p->d_b_s) break;
      if (static_cast<double>(f) * frame_time >= n * t_s) return n;
    }
  }
  return 0;
}

PlanResult solve(int w, const ValidatedParams& p, const SearchOptions& opts) {
  if (w < 2) throw std::invalid_argument("solve: W >= 2 required");
  PlanResult r;
  r.w = w;
  for (int n = n_max(p); n >= 1; --n) {
    ++r.stats.iterations;
    if (auto plan = inner_feasible(n, w, p, opts, &r.stats)) {
      r.n_star = n;
      r.plan = std::move(plan);
      break;
    }
  }
  r.n_baseline = solve_baseline(w, p);
  r.total_proposed = static_cast<std::int64_t>(r.n_star) * w;
  r.total_baseline = static_cast<std::int64_t>(r.n_baseline) * (w - 1);
  r.gain = gain(r.total_proposed, r.total_baseline);
  return r;
}

double standard_epon_delay_bound(double t_reg, double t_c) { return t_reg + t_c; }

Gain gain(std::int64_t total_proposed, std::int64_t total_baseline) {
  if (total_baseline <= 0) return {0.0, false};
  return {100.0 * static_cast<double>(total_proposed - total_baseline) /
              static_cast<double>(total_baseline),
          true};
}

} // namespace ponplan
