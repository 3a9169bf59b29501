// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "ponplan/redistribution.hpp"

#include <stdexcept>
#include <string>

namespace ponplan {

namespace {

void require_topology(int n, int w) {
  if (w < 2) throw std::invalid_argument("redistribution needs W >= 2, got " + std::to_string(w));
  if (n < 1) throw std::invalid_argument("redistribution needs N >= 1, got " + std::to_string(n));
}

} // namespace

int compute_nr(int n, int w) {
  require_topology(n, w);
  const int onus = n * w;
  return (onus + (w - 2)) / (w - 1);
}

RegSlotAssignment map_reg_slot(OnuId onu, int n, int w) {
  require_topology(n, w);
  if (onu.lambda < 0 || onu.lambda >= w || onu.i_n < 0 || onu.i_n >= n) {
    throw std::out_of_range("ONU (" + std::to_string(onu.lambda) + "," + std::to_string(onu.i_n) +
                            ") outside topology N=" + std::to_string(n) + " W=" + std::to_string(w));
  }
  const int g = w * onu.i_n + onu.lambda;
  return {onu, g / (w - 1), g % (w - 1)};
}

std::vector<RegSlotAssignment> enumerate_assignments(int n, int w) {
  require_topology(n, w);
  std::vector<RegSlotAssignment> out;
  out.reserve(static_cast<std::size_t>(n) * w);
  for (int i_n = 0; i_n < n; ++i_n)
    for (int lambda = 0; lambda < w; ++lambda) out.push_back(map_reg_slot({lambda, i_n}, n, w));
  return out;
}

int vacant_slot_count(int n, int w) { return (w - 1) * compute_nr(n, w) - n * w; }

std::vector<RegSlotAssignment> vacant_cells(int n, int w) {
  // Assignments fill g = 0..NW-1 contiguously, so the holes are the tail of the grid.
  std::vector<RegSlotAssignment> out;
  const int cells = (w - 1) * compute_nr(n, w);
  for (int g = n * w; g < cells; ++g) out.push_back({{-1, -1}, g / (w - 1), g % (w - 1)});
  return out;
}

int physical_wavelength(int w_r, int w, int host) {
  if (host < 0 || host >= w) throw std::out_of_range("registration host wavelength out of range");
  if (w_r < 0 || w_r >= w - 1) throw std::out_of_range("data wavelength ordinal out of range");
  return w_r < host ? w_r : w_r + 1;
}

} // namespace ponplan
