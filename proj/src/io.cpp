// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "ponplan/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ponplan {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE)
    throw std::invalid_argument(key + ": not a number: '" + v + "'");
  return d;
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long long i = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno == ERANGE)
    throw std::invalid_argument(key + ": not an integer: '" + v + "'");
  return i;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

} // namespace

void apply_param(SystemParams& p, const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  if (key == "r_e_bps") p.r_e_bps = v;
  else if (key == "r_c_bps") p.r_c_bps = v;
  else if (key == "d_b_s") p.d_b_s = v;
  else if (key == "t_reg_s") p.t_reg_s = v;
  else if (key == "t_gap_s") p.t_gap_s = v;
  else if (key == "g_s") p.g_s = v;
  else if (key == "alpha_bits") p.alpha_bits = v;
  else if (key == "e_max_bits") p.e_max_bits = v;
  else if (key == "l_hdr_bits") p.l_hdr_bits = v;
  else if (key == "alpha_bytes") p.alpha_bits = bytes_to_bits(v);
  else if (key == "e_max_bytes") p.e_max_bits = bytes_to_bits(v);
  else if (key == "l_hdr_bytes") p.l_hdr_bits = bytes_to_bits(v);
  else throw std::invalid_argument("unknown parameter '" + key + "'");
}

KeyValues parse_key_values(std::istream& in, const std::string& source) {
  KeyValues kv;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw std::invalid_argument(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument(where + ": empty key");
    if (kv.count(key)) throw std::invalid_argument(where + ": duplicate key '" + key + "'");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

SystemParams parse_config(std::istream& in, const std::string& source, SystemParams base) {
  for (const auto& [k, v] : parse_key_values(in, source)) {
    try {
      apply_param(base, k, v);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(source + ": " + e.what());
    }
  }
  return base;
}

SystemParams load_config(const std::string& path, SystemParams base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open config");
  return parse_config(in, path, base);
}

void write_plan(std::ostream& out, const CyclePlan& plan) {
  out << "n = " << plan.n << "\n"
      << "w = " << plan.w << "\n"
      << "f_n = " << plan.f_n << "\n"
      << "f_r = " << plan.f_r << "\n"
      << "k_n = " << plan.k_n << "\n"
      << "k_r = " << plan.k_r << "\n"
      << "t_sn_s = " << format_exact(plan.t_sn) << "\n"
      << "t_sr_s = " << format_exact(plan.t_sr) << "\n"
      << "host = " << plan.host_wavelength() << "\n";
}

CyclePlan read_plan(std::istream& in, const std::string& source) {
  const KeyValues kv = parse_key_values(in, source);
  auto get = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument(source + ": missing key '" + key + "'");
    return it->second;
  };
  CyclePlan plan;
  try {
    plan.n = static_cast<int>(to_int("n", get("n")));
    plan.w = static_cast<int>(to_int("w", get("w")));
    plan.f_n = to_int("f_n", get("f_n"));
    plan.f_r = to_int("f_r", get("f_r"));
    plan.k_n = to_int("k_n", get("k_n"));
    plan.k_r = to_int("k_r", get("k_r"));
    plan.t_sn = to_double("t_sn_s", get("t_sn_s"));
    plan.t_sr = to_double("t_sr_s", get("t_sr_s"));
    if (kv.count("host")) plan.host = static_cast<int>(to_int("host", kv.at("host")));
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    if (msg.rfind(source, 0) == 0) throw;
    throw std::invalid_argument(source + ": " + msg);
  }
  return plan;
}

CyclePlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open plan");
  return read_plan(in, path);
}

std::string format_sig9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string format_exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::kCsv;
  if (s == "json-lines") return Format::kJsonLines;
  throw std::invalid_argument("unknown format '" + s + "' (csv or json-lines)");
}

void emit(const Table& table, Format format, std::ostream& out) {
  if (format == Format::kCsv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
      out << (i ? "," : "") << csv_field(table.columns[i]);
    out << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ",";
        const Cell& c = row[i];
        if (auto* n = std::get_if<std::int64_t>(&c)) out << *n;
        else if (auto* d = std::get_if<double>(&c)) out << format_sig9(*d);
        else if (auto* s = std::get_if<std::string>(&c)) out << csv_field(*s);
      }
      out << "\n";
    }
    return;
  }
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      const Cell& c = i < row.size() ? row[i] : Cell{};
      auto& slot = obj[table.columns[i]];
      if (auto* n = std::get_if<std::int64_t>(&c)) slot = *n;
      // Round through the 9-digit text so both formats carry the same value.
      else if (auto* d = std::get_if<double>(&c)) slot = std::strtod(format_sig9(*d).c_str(), nullptr);
      else if (auto* s = std::get_if<std::string>(&c)) slot = *s;
      else slot = nullptr;
    }
    out << obj.dump() << "\n";
  }
}

void emit_to(const Table& table, Format format, const std::string& path) {
  if (path.empty() || path == "-") {
    emit(table, format, std::cout);
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("<stdout>: write failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  emit(table, format, out);
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed");
}

} // namespace ponplan
