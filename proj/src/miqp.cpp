// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "ponplan/miqp.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "ponplan/io.hpp"
#include "ponplan/redistribution.hpp"

namespace ponplan {

namespace {

constexpr double kUs = 1e6;

std::string num(double v) { return format_exact(v); }

// "+ c name" / "- c name" with the sign folded in.
std::string term(double c, const std::string& name) {
  if (c == 0.0) return {};
  return (c < 0 ? " - " : " + ") + num(std::abs(c)) + " " + name;
}

} // namespace

void export_miqp(std::ostream& out, int n, int w, const ValidatedParams& p,
                 const MiqpOptions& opts) {
  validate_topology({n, w});
  const int n_r = compute_nr(n, w);
  const SystemParams& s = p.raw();

  const double line = s.alpha_bits / s.r_e_bps * kUs;   // frame airtime
  const double hdr = s.l_hdr_bits / s.r_e_bps * kUs;    // header airtime
  const double guard = s.g_s * kUs;
  const double serve = s.alpha_bits / s.r_c_bps * kUs;  // frame generation time
  const double d_b = s.d_b_s * kUs;
  const double t_reg = s.t_reg_s * kUs;
  const double t_gap = s.t_gap_s * kUs;
  const double big_m = opts.big_m_factor * t_gap;
  const double ceil_hi = s.e_max_bits * (1.0 - opts.epsilon);

  const auto f_cap = [&](int cycle_slots) {
    return std::floor(s.d_b_s * s.r_e_bps / (cycle_slots * s.alpha_bits));
  };
  const double k_n_cap = std::floor(s.t_gap_s / (n * s.g_s));
  const double k_r_cap = std::ceil(s.t_reg_s / (n_r * s.g_s)) + 1;

  std::set<std::pair<int, int>> classes;
  for (const auto& a : enumerate_assignments(n, w)) classes.insert({a.onu.i_n, a.i_r});

  out << "\\ Redistributed registration plan, N = " << n << ", W = " << w << ", N_r = " << n_r
      << "\n\\ Time unit: microseconds. M = " << num(big_m) << ", epsilon = " << num(opts.epsilon)
      << "\n\\ One row block per distinct (i_n, i_r) ONU class.\n";

  out << "Minimize\n obj: [ " << num(2.0 * n_r) << " kr * tsr ] / 2\n";
  out << "Subject To\n";
  out << " slot_n: tsn" << term(-line, "fn") << term(-hdr, "pn") << " >= " << num(guard) << "\n";
  out << " slot_r: tsr" << term(-line, "fr") << term(-hdr, "pr") << " >= " << num(guard) << "\n";
  for (const char* t : {"n", "r"}) {
    const std::string f = std::string("f") + t;
    const std::string pk = std::string("p") + t;
    out << " ceil_lo_" << t << ": " << num(s.e_max_bits) << " " << pk
        << term(-s.alpha_bits, f) << " >= 0\n";
    out << " ceil_hi_" << t << ": " << num(s.e_max_bits) << " " << pk
        << term(-s.alpha_bits, f) << " <= " << num(ceil_hi) << "\n";
  }
  out << " capacity: " << num(serve) << " fn" << term(-n, "tsn") << " >= 0\n";
  out << " window: [ " << num(n_r) << " kr * tsr ] >= " << num(t_reg) << "\n";
  out << " gap: [ " << num(n) << " kn * tsn ] <= " << num(t_gap) << "\n";

  for (const auto& [i_n, i_r] : classes) {
    const std::string id = std::to_string(i_n) + "_" + std::to_string(i_r);
    const std::string b0 = "b0_" + id, bl = "bl_" + id, bp = "bp_" + id;
    const std::string z0 = "z0_" + id, zl = "zl_" + id, zp = "zp_" + id;
    // gap_reg0 - F_r as a linear form.
    const std::string reg0 = term(-(n - i_n), "tsn") + term(-i_r, "tsr") + term(serve, "fr");

    out << " b0lo_" << id << ": " << b0 << reg0 << " >= 0\n";
    out << " b0hi_" << id << ": " << b0 << reg0 << term(big_m, z0) << " <= " << num(big_m) << "\n";
    out << " b0z_" << id << ": " << b0 << term(-big_m, z0) << " <= 0\n";

    // Backlog after registration cycle k_r - 1 (bl) and k_r - 2 (bp).
    for (int back : {1, 2}) {
      const std::string& b = back == 1 ? bl : bp;
      const std::string& z = back == 1 ? zl : zp;
      const std::string grow = " - b0_" + id + " - [ " + num(n_r) + " kr * tsr ] + [ " +
                               num(serve) + " kr * fr ]" + term(back * n_r, "tsr") +
                               term(-back * serve, "fr");
      out << " b" << back << "lo_" << id << ": " << b << grow << " >= 0\n";
      out << " b" << back << "hi_" << id << ": " << b << grow << term(big_m, z)
          << " <= " << num(big_m) << "\n";
      out << " b" << back << "z_" << id << ": " << b << term(-big_m, z) << " <= 0\n";
    }

    // The k_r = 1 reading of the second row is conservative.
    out << " dreg0_" << id << ":" << term(n - i_n, "tsn") << term(i_r, "tsr") << " <= "
        << num(d_b) << "\n";
    out << " dreg_" << id << ":" << term(n_r, "tsr") << " + " << bp << " <= " << num(d_b) << "\n";
    out << " dnr_" << id << ":" << term(i_n, "tsn") << term(n_r - i_r, "tsr") << " + " << bl
        << " <= " << num(d_b) << "\n";
    out << " drain_" << id << ": " << bl << term(i_n - n, "tsn") << term(n_r - i_r, "tsr")
        << " - [ " << num(serve) << " kn * fn ] + [ " << num(n) << " kn * tsn ] <= 0\n";
  }

  out << "Bounds\n";
  out << " 1 <= fn <= " << num(f_cap(n)) << "\n";
  out << " 1 <= fr <= " << num(f_cap(n_r)) << "\n";
  out << " 1 <= pn <= " << num(f_cap(n)) << "\n";
  out << " 1 <= pr <= " << num(f_cap(n_r)) << "\n";
  out << " 1 <= kn <= " << num(k_n_cap) << "\n";
  out << " 1 <= kr <= " << num(k_r_cap) << "\n";
  out << " " << num(guard) << " <= tsn <= " << num(d_b / n) << "\n";
  out << " " << num(guard) << " <= tsr <= " << num(d_b / n_r) << "\n";
  for (const auto& [i_n, i_r] : classes) {
    const std::string id = std::to_string(i_n) + "_" + std::to_string(i_r);
    for (const char* b : {"b0_", "bl_", "bp_"}) out << " 0 <= " << b << id << " <= " << num(big_m) << "\n";
  }
  out << "Generals\n fn fr pn pr kn kr\n";
  out << "Binaries\n";
  for (const auto& [i_n, i_r] : classes) {
    const std::string id = std::to_string(i_n) + "_" + std::to_string(i_r);
    out << " z0_" << id << " zl_" << id << " zp_" << id << "\n";
  }
  out << "End\n";
}

void export_miqp_file(const std::string& path, int n, int w, const ValidatedParams& p,
                      const MiqpOptions& opts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  export_miqp(out, n, w, p, opts);
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed");
}

} // namespace ponplan
