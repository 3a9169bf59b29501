// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "ponplan/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace ponplan {

namespace {

struct Event {
  double t = 0.0;
  double duration = 0.0;
  int wavelength = 0;
  int onu = -1; // index into SimTrace::onus; -1 marks the registration window
  CycleType type = CycleType::kNonRegistration;
  int super_cycle = 0;
  std::int64_t cycle = 0;
};

// Frames completed strictly before t, counting from the arrival origin t0.
std::int64_t arrivals_before(double t, double t0, double tau) {
  const double x = (t - t0) / tau;
  if (x <= 0.0) return 0;
  return std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(x)) - 1);
}

constexpr double kOverlapSlack = 1e-12;

} // namespace

const char* to_string(CycleType t) {
  return t == CycleType::kRegistration ? "registration" : "non_registration";
}

SimTrace simulate(const CyclePlan& plan, const ValidatedParams& p, int super_cycles,
                  const SimOptions& opts) {
  validate_plan_structure(plan, p, /*allow_no_registration=*/true);
  if (super_cycles < 1) throw std::invalid_argument("simulate: super_cycles must be >= 1");

  const double tau = p.frame_interval();
  const double t_cn = plan.t_cn();
  const double t_cr = plan.t_cr();
  const double period = plan.super_cycle();
  const int host = plan.host_wavelength();
  const double t0 = opts.prime ? -t_cn : 0.0;

  SimTrace trace;
  trace.frame_interval = tau;
  const auto assignments = enumerate_assignments(plan.n, plan.w);
  trace.onus.reserve(assignments.size());
  for (const auto& a : assignments) trace.onus.push_back({a.onu, a.i_r, a.w_r, {}});

  std::vector<Event> events;
  events.reserve(assignments.size() *
                     static_cast<std::size_t>(super_cycles * (plan.k_r + plan.k_n) + 1) +
                 static_cast<std::size_t>(super_cycles));
  for (std::size_t o = 0; o < assignments.size(); ++o) {
    const auto& a = assignments[o];
    const int idx = static_cast<int>(o);
    if (opts.prime)
      events.push_back({-t_cn + a.onu.i_n * plan.t_sn, plan.t_sn, a.onu.lambda, idx,
                        CycleType::kNonRegistration, 0, 0});
    const int reg_wl = physical_wavelength(a.w_r, plan.w, host);
    for (int c = 1; c <= super_cycles; ++c) {
      const double base = (c - 1) * period;
      for (std::int64_t k = 0; k < plan.k_r; ++k)
        events.push_back({base + static_cast<double>(k) * t_cr + a.i_r * plan.t_sr, plan.t_sr,
                          reg_wl, idx, CycleType::kRegistration, c, k});
      const double nr_base = base + plan.window();
      for (std::int64_t k = 0; k < plan.k_n; ++k)
        events.push_back({nr_base + static_cast<double>(k) * t_cn + a.onu.i_n * plan.t_sn,
                          plan.t_sn, a.onu.lambda, idx, CycleType::kNonRegistration, c, k});
    }
  }
  if (plan.k_r > 0) {
    for (int c = 1; c <= super_cycles; ++c)
      events.push_back({(c - 1) * period, plan.window(), host, -1, CycleType::kRegistration, c, 0});
  }

  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return std::tie(a.t, a.wavelength, a.onu) < std::tie(b.t, b.wavelength, b.onu);
  });

  std::vector<double> busy_until(static_cast<std::size_t>(plan.w),
                                 -std::numeric_limits<double>::infinity());
  std::vector<std::int64_t> served(assignments.size(), 0);
  trace.end_queue.assign(static_cast<std::size_t>(super_cycles), 0);

  for (const Event& e : events) {
    double& busy = busy_until[static_cast<std::size_t>(e.wavelength)];
    if (e.t < busy - kOverlapSlack) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "simulate: slot at t=%.9g s overlaps the previous one on wavelength %d",
                    e.t, e.wavelength);
      throw std::logic_error(buf);
    }
    busy = std::max(busy, e.t + e.duration);
    if (e.onu < 0) continue;

    auto& onu = trace.onus[static_cast<std::size_t>(e.onu)];
    std::int64_t& done = served[static_cast<std::size_t>(e.onu)];
    const std::int64_t cap = e.type == CycleType::kRegistration ? plan.f_r : plan.f_n;
    const std::int64_t queued = arrivals_before(e.t, t0, tau) - done;

    SlotRecord r;
    r.t_start = e.t;
    r.wavelength = e.wavelength;
    r.type = e.type;
    r.super_cycle = e.super_cycle;
    r.cycle = e.cycle;
    r.frames_served = std::min(queued, cap);
    r.queue_after = queued - r.frames_served;
    // The oldest waiting frame is number done+1 since the origin.
    if (queued > 0) r.max_delay = e.t - (t0 + static_cast<double>(done + 1) * tau);
    done += r.frames_served;

    if (r.max_delay > trace.max_delay) {
      trace.max_delay = r.max_delay;
      trace.max_delay_type = r.type;
      trace.max_delay_cycle = r.cycle;
      trace.max_delay_super_cycle = r.super_cycle;
    }
    const bool last_reg = r.type == CycleType::kRegistration && r.cycle == plan.k_r - 1;
    const bool first_nr = r.type == CycleType::kNonRegistration && r.cycle == 0 &&
                          r.super_cycle > 0 && plan.k_r > 0;
    if (last_reg || first_nr) trace.max_dominant_delay = std::max(trace.max_dominant_delay, r.max_delay);
    if (r.type == CycleType::kNonRegistration && r.super_cycle > 0 && r.cycle == plan.k_n - 1)
      trace.end_queue[static_cast<std::size_t>(r.super_cycle - 1)] += r.queue_after;

    onu.slots.push_back(r);
  }
  return trace;
}

ComparisonReport compare_with_analysis(const SimTrace& trace,
                                       const std::vector<DelayProfile>& profiles,
                                       const ValidatedParams& p, int from_super_cycle,
                                       int to_super_cycle) {
  const double tau = p.frame_interval();
  ComparisonReport rep;
  rep.tolerance = 2.0 * tau;

  std::map<std::pair<int, int>, const DelayProfile*> by_onu;
  for (const auto& prof : profiles) by_onu[{prof.onu.lambda, prof.onu.i_n}] = &prof;

  constexpr std::size_t kKeep = 32;
  auto record = [&](const OnuTrace& o, const SlotRecord& s, const char* what, double sim,
                    double ana) {
    const double err = std::abs(sim - ana);
    if (err <= rep.tolerance) return;
    rep.pass = false;
    ++rep.mismatch_count;
    if (rep.mismatches.size() < kKeep)
      rep.mismatches.push_back({o.onu, s.super_cycle, s.type, s.cycle, what, sim, ana});
  };

  for (const auto& o : trace.onus) {
    auto it = by_onu.find({o.onu.lambda, o.onu.i_n});
    if (it == by_onu.end())
      throw std::invalid_argument("compare_with_analysis: no profile for ONU (" +
                                  std::to_string(o.onu.lambda) + "," +
                                  std::to_string(o.onu.i_n) + ")");
    const DelayProfile& prof = *it->second;
    const auto k_r = static_cast<std::int64_t>(prof.backlog_reg.size());
    const auto k_n = static_cast<std::int64_t>(prof.backlog_nr.size());

    for (const auto& s : o.slots) {
      if (s.super_cycle < from_super_cycle) continue;
      if (to_super_cycle >= 0 && s.super_cycle > to_super_cycle) continue;
      const auto k = static_cast<std::size_t>(s.cycle);
      double delay = 0.0;
      double backlog = 0.0;
      const char* what = "delay";
      if (s.type == CycleType::kRegistration) {
        if (s.cycle >= k_r) continue;
        backlog = prof.backlog_reg[k];
        delay = prof.gaps_reg[k] + (k == 0 ? 0.0 : std::max(0.0, prof.backlog_reg[k - 1]));
        if (s.cycle == k_r - 1) {
          what = "d_reg_last";
          delay = prof.d_reg_last;
        }
      } else {
        if (s.cycle >= k_n) continue;
        backlog = prof.backlog_nr[k];
        if (k == 0) {
          what = "d_nr_first";
          delay = prof.d_nr_first;
        } else {
          delay = prof.gaps_nr[k] + std::max(0.0, prof.backlog_nr[k - 1]);
        }
      }
      ++rep.slots_compared;
      const double sim_queue = static_cast<double>(s.queue_after) * tau;
      const double ana_queue = std::max(0.0, backlog);
      rep.max_queue_error = std::max(rep.max_queue_error, std::abs(sim_queue - ana_queue));
      rep.max_delay_error = std::max(rep.max_delay_error, std::abs(s.max_delay - delay));
      record(o, s, what, s.max_delay, delay);
      record(o, s, "queue", sim_queue, ana_queue);
    }
  }
  return rep;
}

std::string describe(const Mismatch& m) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "ONU(%d,%d) super-cycle %d %s cycle %lld: %s simulated %.9g s, analytic %.9g s",
                m.onu.lambda, m.onu.i_n, m.super_cycle, to_string(m.type),
                static_cast<long long>(m.cycle), m.quantity.c_str(), m.simulated, m.analytic);
  return buf;
}

} // namespace ponplan
