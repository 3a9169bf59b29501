// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "ponplan/delay_analysis.hpp"

#include <algorithm>
#include <limits>

namespace ponplan {

namespace {

// B_reg[k] as a queue size. For k = -1 this is the drained state left by the
// previous non-registration phase.
double reg_backlog(double b0, double growth, std::int64_t k) {
  if (k < 0) return 0.0;
  return std::max(0.0, b0 + static_cast<double>(k) * growth);
}

} // namespace

PlanTerms plan_terms(const CyclePlan& plan, const ValidatedParams& p) {
  PlanTerms t;
  t.n = plan.n;
  t.n_r = plan.n_r();
  t.k_n = plan.k_n;
  t.k_r = plan.k_r;
  t.t_sn = plan.t_sn;
  t.t_sr = plan.t_sr;
  t.t_cn = plan.t_cn();
  t.t_cr = plan.t_cr();
  t.serve_n = static_cast<double>(plan.f_n) * p->alpha_bits / p->r_c_bps;
  t.serve_r = static_cast<double>(plan.f_r) * p->alpha_bits / p->r_c_bps;
  return t;
}

OnuScalars evaluate_onu(int i_n, int i_r, const PlanTerms& t) {
  const double gap_reg0 = (t.n - i_n) * t.t_sn + i_r * t.t_sr;
  const double gap_nr0 = i_n * t.t_sn + (t.n_r - i_r) * t.t_sr;
  const double b_reg0 = std::max(0.0, gap_reg0 - t.serve_r);
  const double growth = t.t_cr - t.serve_r;
  const double drain = t.serve_n - t.t_cn;

  OnuScalars s;
  s.d_reg_last = t.k_r == 1 ? gap_reg0 : t.t_cr + reg_backlog(b_reg0, growth, t.k_r - 2);
  const double b_reg_last = reg_backlog(b_reg0, growth, t.k_r - 1);
  s.d_nr_first = gap_nr0 + b_reg_last;
  s.b_nr_first = b_reg_last + gap_nr0 - t.serve_n;
  s.b_nr_last = s.b_nr_first - static_cast<double>(t.k_n - 1) * drain;

  double mid = 0.0;
  if (t.k_r >= 2) mid = std::max(mid, gap_reg0);
  if (t.k_r >= 3) {
    mid = std::max(mid, t.t_cr + std::max(reg_backlog(b_reg0, growth, 0),
                                          reg_backlog(b_reg0, growth, t.k_r - 3)));
  }
  if (t.k_n >= 2) {
    const double b_second_last = s.b_nr_first - static_cast<double>(t.k_n - 2) * drain;
    mid = std::max(mid, t.t_cn + std::max({0.0, s.b_nr_first, b_second_last}));
  }
  s.d_intermediate = mid;
  return s;
}

InterSlotGaps inter_slot_gaps(OnuId onu, const CyclePlan& plan) {
  const auto a = map_reg_slot(onu, plan.n, plan.w);
  const int n_r = plan.n_r();
  InterSlotGaps g;
  g.reg.assign(static_cast<std::size_t>(plan.k_r), plan.t_cr());
  g.nr.assign(static_cast<std::size_t>(plan.k_n), plan.t_cn());
  if (!g.reg.empty()) g.reg[0] = (plan.n - onu.i_n) * plan.t_sn + a.i_r * plan.t_sr;
  if (!g.nr.empty()) g.nr[0] = onu.i_n * plan.t_sn + (n_r - a.i_r) * plan.t_sr;
  return g;
}

BacklogTrace backlog_trace(OnuId onu, const CyclePlan& plan, const ValidatedParams& p) {
  const auto gaps = inter_slot_gaps(onu, plan);
  const PlanTerms t = plan_terms(plan, p);
  BacklogTrace b;
  b.reg.resize(gaps.reg.size());
  b.nr.resize(gaps.nr.size());
  const double b0 = gaps.reg.empty() ? 0.0 : std::max(0.0, gaps.reg[0] - t.serve_r);
  for (std::size_t k = 0; k < b.reg.size(); ++k)
    b.reg[k] = reg_backlog(b0, t.t_cr - t.serve_r, static_cast<std::int64_t>(k));
  const double carried = b.reg.empty() ? 0.0 : b.reg.back();
  const double nr0 = carried + gaps.nr[0] - t.serve_n;
  for (std::size_t k = 0; k < b.nr.size(); ++k)
    b.nr[k] = nr0 - static_cast<double>(k) * (t.serve_n - t.t_cn);
  return b;
}

WorstDelays worst_delays(OnuId onu, const CyclePlan& plan, const ValidatedParams& p) {
  const auto a = map_reg_slot(onu, plan.n, plan.w);
  const auto s = evaluate_onu(onu.i_n, a.i_r, plan_terms(plan, p));
  return {s.d_reg_last, s.d_nr_first};
}

DelayProfile delay_profile(OnuId onu, const CyclePlan& plan, const ValidatedParams& p) {
  DelayProfile d;
  d.onu = onu;
  d.i_r = map_reg_slot(onu, plan.n, plan.w).i_r;
  auto gaps = inter_slot_gaps(onu, plan);
  auto backlog = backlog_trace(onu, plan, p);
  d.gaps_reg = std::move(gaps.reg);
  d.gaps_nr = std::move(gaps.nr);
  d.backlog_reg = std::move(backlog.reg);
  d.backlog_nr = std::move(backlog.nr);
  const auto worst = worst_delays(onu, plan, p);
  d.d_reg_last = worst.d_reg_last;
  d.d_nr_first = worst.d_nr_first;
  return d;
}

std::vector<DelayProfile> delay_profiles(const CyclePlan& plan, const ValidatedParams& p) {
  std::vector<DelayProfile> out;
  for (const auto& a : enumerate_assignments(plan.n, plan.w))
    out.push_back(delay_profile(a.onu, plan, p));
  return out;
}

std::string describe_violations(unsigned mask) {
  if (mask == kViolationNone) return "feasible";
  static constexpr std::pair<unsigned, const char*> names[] = {
      {kViolationWindow, "window"},     {kViolationGap, "gap"},
      {kViolationCapacity, "capacity"}, {kViolationDelay, "delay"},
      {kViolationIntermediate, "intermediate"}, {kViolationDrain, "drain"},
  };
  std::string out;
  for (const auto& [bit, name] : names) {
    if (!(mask & bit)) continue;
    if (!out.empty()) out += '+';
    out += name;
  }
  return out;
}

FeasibilityReport check_plan(const CyclePlan& plan, const ValidatedParams& p,
                             const CheckOptions& opts) {
  validate_plan_structure(plan, p);
  const PlanTerms t = plan_terms(plan, p);
  const double budget = p->d_b_s;

  FeasibilityReport r;
  r.window = plan.window();
  r.gap = plan.gap();
  if (opts.enforce_window && r.window < p->t_reg_s) r.violations |= kViolationWindow;
  if (opts.enforce_gap && r.gap > p->t_gap_s) r.violations |= kViolationGap;
  if (t.serve_n < t.t_cn) r.violations |= kViolationCapacity;

  const auto assignments = enumerate_assignments(plan.n, plan.w);
  r.onus.reserve(assignments.size());
  r.max_b_nr_last = -std::numeric_limits<double>::infinity();
  for (const auto& a : assignments) {
    const OnuScalars s = evaluate_onu(a.onu.i_n, a.i_r, t);
    OnuReport o{a.onu, a.i_r, s.d_reg_last, s.d_nr_first, s.b_nr_last, s.d_intermediate, true};
    if (s.d_reg_last > budget || s.d_nr_first > budget) {
      r.violations |= kViolationDelay;
      o.ok = false;
    }
    if (s.d_intermediate > budget) {
      r.violations |= kViolationIntermediate;
      o.ok = false;
    }
    if (s.b_nr_last > 0.0) {
      r.violations |= kViolationDrain;
      o.ok = false;
    }
    r.max_pair_delay = std::max({r.max_pair_delay, s.d_reg_last, s.d_nr_first});
    r.max_intermediate_delay = std::max(r.max_intermediate_delay, s.d_intermediate);
    r.max_b_nr_last = std::max(r.max_b_nr_last, s.b_nr_last);
    r.onus.push_back(o);
  }
  r.feasible = r.violations == kViolationNone;
  return r;
}

} // namespace ponplan
