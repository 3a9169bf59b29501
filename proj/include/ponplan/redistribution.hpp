// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace ponplan {

/// Logical ONU identity: home wavelength and slot index outside registration.
struct OnuId {
  int lambda = 0;
  int i_n = 0;

  friend bool operator==(const OnuId&, const OnuId&) = default;
};

/// Where an ONU transmits during a registration cycle. w_r is an ordinal over
/// the W-1 data wavelengths, independent of which wavelength hosts registration.
struct RegSlotAssignment {
  OnuId onu;
  int i_r = 0;
  int w_r = 0;

  friend bool operator==(const RegSlotAssignment&, const RegSlotAssignment&) = default;
};

/// ceil(N*W / (W-1)): ONUs per data wavelength during registration cycles.
int compute_nr(int n, int w);

/// Row-wise round-robin placement. With g = W*i_n + lambda,
/// i_r = g / (W-1) and w_r = g % (W-1).
RegSlotAssignment map_reg_slot(OnuId onu, int n, int w);

/// All N*W assignments, ordered by (i_n, lambda), i.e. by fill order.
std::vector<RegSlotAssignment> enumerate_assignments(int n, int w);

/// (W-1)*N_r - N*W
int vacant_slot_count(int n, int w);

/// Registration-cycle grid cells (i_r, w_r) with no ONU, ordered by i_r then w_r.
std::vector<RegSlotAssignment> vacant_cells(int n, int w);

/// Physical wavelength for data ordinal w_r when `host` carries registration.
int physical_wavelength(int w_r, int w, int host);

} // namespace ponplan
