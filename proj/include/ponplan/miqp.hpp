// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "ponplan/model.hpp"

namespace ponplan {

struct MiqpOptions {
  double epsilon = 1e-6;   // strictness margin for linearized ceilings
  double big_m_factor = 10; // M = big_m_factor * T_gap
};

/// Write the fixed-N feasibility model (minimize the registration window)
/// in CPLEX LP format with bilinear terms. Time is expressed in
/// microseconds to keep coefficients well scaled. Packet counts use the
/// ceiling linearization and each max{0, .} a binary with big-M.
/// The built-in planner does not read this file; it is for external solvers.
void export_miqp(std::ostream& out, int n, int w, const ValidatedParams& p,
                 const MiqpOptions& opts = {});
void export_miqp_file(const std::string& path, int n, int w, const ValidatedParams& p,
                      const MiqpOptions& opts = {});

} // namespace ponplan
