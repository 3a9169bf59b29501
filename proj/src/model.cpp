// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "ponplan/model.hpp"

#include <cmath>
#include <utility>

namespace ponplan {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out = "invalid system parameters: ";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += "; ";
    out += v[i];
  }
  return out;
}

} // namespace

ParamError::ParamError(std::vector<std::string> violations)
    : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

ValidatedParams validate_params(const SystemParams& p) {
  std::vector<std::string> bad;

  const std::pair<const char*, double> fields[] = {
      {"r_e_bps", p.r_e_bps},     {"r_c_bps", p.r_c_bps}, {"d_b_s", p.d_b_s},
      {"t_reg_s", p.t_reg_s},     {"t_gap_s", p.t_gap_s}, {"g_s", p.g_s},
      {"alpha_bits", p.alpha_bits}, {"e_max_bits", p.e_max_bits},
      {"l_hdr_bits", p.l_hdr_bits},
  };
  bool all_finite = true;
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) {
      bad.push_back(std::string(name) + " must be finite");
      all_finite = false;
    } else if (!(value > 0.0)) {
      bad.push_back(std::string(name) + " must be strictly positive");
    }
  }
  if (all_finite) {
    if (!(p.r_c_bps < p.r_e_bps)) bad.emplace_back("r_c < r_e violated");
    if (!(p.alpha_bits <= p.e_max_bits)) bad.emplace_back("alpha <= e_max violated");
  }
  if (!bad.empty()) throw ParamError(std::move(bad));
  return ValidatedParams(p);
}

void validate_topology(const Topology& t) {
  if (t.w < 2) throw std::invalid_argument("topology: W >= 2 required");
  if (t.n < 1) throw std::invalid_argument("topology: N >= 1 required");
}

} // namespace ponplan
