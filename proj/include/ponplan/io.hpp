// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ponplan/model.hpp"
#include "ponplan/slotting.hpp"

namespace ponplan {

/// Parse `key = value` lines ('#' starts a comment) on top of `base`.
/// Keys are the SystemParams field names; alpha, e_max and l_hdr may also be
/// given in bytes with a `_bytes` suffix. Errors carry `source:line`.
SystemParams parse_config(std::istream& in, const std::string& source,
                          SystemParams base = {});
SystemParams load_config(const std::string& path, SystemParams base = {});

/// Apply one `key=value` override, as accepted by parse_config.
void apply_param(SystemParams& p, const std::string& key, const std::string& value);

/// Generic key-value records; values keep their textual form.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(std::istream& in, const std::string& source);

/// Plans round-trip exactly: floats use 17 significant digits.
void write_plan(std::ostream& out, const CyclePlan& plan);
/// Reads the keys written by write_plan; other keys are ignored.
CyclePlan read_plan(std::istream& in, const std::string& source);
CyclePlan load_plan(const std::string& path);

/// 9 significant digits, the precision of every tabular output.
std::string format_sig9(double v);
/// Round-trip precision.
std::string format_exact(double v);

enum class Format { kCsv, kJsonLines };
Format parse_format(const std::string& s);

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Stable column order, header row for CSV, one JSON object per line
/// otherwise. Empty cells are blank in CSV and null in JSON.
void emit(const Table& table, Format format, std::ostream& out);

/// Writes to `path`, or to stdout when path is empty or "-".
/// Throws std::runtime_error naming the path on I/O failure.
void emit_to(const Table& table, Format format, const std::string& path);

} // namespace ponplan
