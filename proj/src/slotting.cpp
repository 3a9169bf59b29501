// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "ponplan/slotting.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ponplan/redistribution.hpp"

namespace ponplan {

std::int64_t packets_per_slot(std::int64_t f, const ValidatedParams& p) {
  if (f < 1) throw std::invalid_argument("packets_per_slot: f >= 1 required");
  const double payload = static_cast<double>(f) * p->alpha_bits;
  return static_cast<std::int64_t>(std::ceil(payload / p->e_max_bits));
}

double min_slot_duration(std::int64_t f, const ValidatedParams& p) {
  const double payload = static_cast<double>(f) * p->alpha_bits;
  const double headers = static_cast<double>(packets_per_slot(f, p)) * p->l_hdr_bits;
  return (payload + headers) / p->r_e_bps + p->g_s;
}

SlotSpec min_slot(std::int64_t f, const ValidatedParams& p) {
  return {f, packets_per_slot(f, p), min_slot_duration(f, p)};
}

int CyclePlan::n_r() const { return compute_nr(n, w); }

CycleDurations cycle_durations(const CyclePlan& plan) { return {plan.t_cn(), plan.t_cr()}; }

WindowAndGap window_and_gap(const CyclePlan& plan) { return {plan.window(), plan.gap()}; }

void validate_plan_structure(const CyclePlan& plan, const ValidatedParams& p,
                             bool allow_no_registration) {
  validate_topology({plan.n, plan.w});
  auto fail = [](const std::string& what) { throw std::invalid_argument("plan: " + what); };
  if (plan.f_n < 1) fail("f_n >= 1 required");
  if (plan.f_r < 1) fail("f_r >= 1 required");
  if (plan.k_n < 1) fail("k_n >= 1 required");
  if (plan.k_r < (allow_no_registration ? 0 : 1)) fail("k_r >= 1 required");
  if (plan.host < -1 || plan.host >= plan.w) fail("host wavelength out of range");
  if (!std::isfinite(plan.t_sn) || plan.t_sn < min_slot_duration(plan.f_n, p))
    fail("t_sn below minimum slot duration for f_n");
  if (!std::isfinite(plan.t_sr) || plan.t_sr < min_slot_duration(plan.f_r, p))
    fail("t_sr below minimum slot duration for f_r");
}

CyclePlan make_min_plan(int n, int w, std::int64_t f_n, std::int64_t f_r, std::int64_t k_n,
                        std::int64_t k_r, const ValidatedParams& p) {
  CyclePlan plan;
  plan.n = n;
  plan.w = w;
  plan.f_n = f_n;
  plan.f_r = f_r;
  plan.k_n = k_n;
  plan.k_r = k_r;
  plan.t_sn = min_slot_duration(f_n, p);
  plan.t_sr = min_slot_duration(f_r, p);
  return plan;
}

} // namespace ponplan
