// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ponplan {

/// Physical and protocol constants of the TWDM-EPON upstream.
///
/// Times are seconds, sizes are bits, rates are bits/second. Config files
/// may give sizes in bytes; they are converted on load.
struct SystemParams {
  double r_e_bps = 10e9;        // line rate per wavelength
  double r_c_bps = 614.4e6;     // eCPRI rate per ONU
  double d_b_s = 150e-6;        // scheduling delay budget
  double t_reg_s = 250e-6;      // required registration window
  double t_gap_s = 100e-3;      // max gap between registration windows
  double g_s = 1e-6;            // guard band per slot
  double alpha_bits = 16 * 8;   // eCPRI basic frame
  double e_max_bits = 1500 * 8; // Ethernet payload
  double l_hdr_bits = 26 * 8;   // Ethernet header

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Thrown by validate_params. what() joins every violated invariant.
class ParamError : public std::invalid_argument {
 public:
  explicit ParamError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// SystemParams that passed validate_params. Only validate_params builds one,
/// so every API taking ValidatedParams can rely on the invariants.
class ValidatedParams {
 public:
  const SystemParams& raw() const noexcept { return p_; }
  const SystemParams* operator->() const noexcept { return &p_; }

  /// Time to generate one basic frame at R_C.
  double frame_interval() const noexcept { return p_.alpha_bits / p_.r_c_bps; }

 private:
  explicit ValidatedParams(const SystemParams& p) : p_(p) {}
  friend ValidatedParams validate_params(const SystemParams& p);
  SystemParams p_;
};

ValidatedParams validate_params(const SystemParams& p);

inline ValidatedParams validate_params(const ValidatedParams& p) {
  return validate_params(p.raw());
}

/// Default values of the reference configuration (E_max/L_hdr as standard
/// Ethernet framing: 1500 byte payload, 26 byte header).
inline ValidatedParams default_params() { return validate_params(SystemParams{}); }

struct Topology {
  int n = 1; // ONUs per wavelength outside registration
  int w = 2; // upstream wavelengths
};

void validate_topology(const Topology& t);

constexpr double bytes_to_bits(double bytes) noexcept { return bytes * 8.0; }
constexpr double bits_to_bytes(double bits) noexcept { return bits / 8.0; }

} // namespace ponplan
