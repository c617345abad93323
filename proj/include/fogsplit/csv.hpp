// Copyright 2026 The fogsplit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef FOGSPLIT_CSV_HPP
#define FOGSPLIT_CSV_HPP

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fogsplit/scenarios.hpp"

namespace fogsplit::csv {

inline constexpr std::string_view kHeader =
    "scenario,demand_mips,traffic_gbps,K,solver,total_w,network_w,processing_w,iot_w,"
    "accessfog_w,edgefog_w,metro_w,core_w,cloud_w,baseline_w,savings_vs_cloud_pct,"
    "savings_vs_k1_pct,optimal,wall_ms";
inline constexpr std::size_t kFieldCount = 19;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Six significant digits, C locale.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

inline std::string format_row(const ResultRow& r) {
  std::string s = r.scenario;
  auto add = [&](const std::string& field) {
    s += ',';
    s += field;
  };
  add(format_number(r.demand_mips));
  add(format_number(r.traffic_gbps));
  add(std::to_string(r.k));
  add(r.solver);
  add(format_number(r.total_w));
  add(format_number(r.network_w));
  add(format_number(r.processing_w));
  for (double w : r.layer_w) add(format_number(w));
  add(format_number(r.baseline_w));
  add(format_number(r.savings_vs_cloud_pct));
  add(format_number(r.savings_vs_k1_pct));
  add(r.optimal ? "1" : "0");
  add(format_number(r.wall_ms));
  return s;
}

inline void write(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kHeader << '\n';
  for (const ResultRow& r : rows) os << format_row(r) << '\n';
}

namespace detail {

inline double parse_number(std::string_view field, std::string_view column) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw ParseError("column " + std::string(column) + ": not a number '" + std::string(field) +
                     "'");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

inline ResultRow parse_row(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = detail::split(line);
  if (f.size() != kFieldCount) {
    throw ParseError("expected " + std::to_string(kFieldCount) + " fields, got " +
                     std::to_string(f.size()));
  }
  const auto names = detail::split(kHeader);
  auto num = [&](std::size_t i) { return detail::parse_number(f[i], names[i]); };
  ResultRow r;
  r.scenario = std::string(f[0]);
  r.demand_mips = num(1);
  r.traffic_gbps = num(2);
  const double k = num(3);
  if (k < 1 || k != static_cast<double>(static_cast<std::size_t>(k))) {
    throw ParseError("column K: expected a positive integer");
  }
  r.k = static_cast<std::size_t>(k);
  r.solver = std::string(f[4]);
  r.total_w = num(5);
  r.network_w = num(6);
  r.processing_w = num(7);
  for (std::size_t l = 0; l < kLayerCount; ++l) r.layer_w[l] = num(8 + l);
  r.baseline_w = num(14);
  r.savings_vs_cloud_pct = num(15);
  r.savings_vs_k1_pct = num(16);
  if (f[17] != "0" && f[17] != "1") throw ParseError("column optimal: expected 0 or 1");
  r.optimal = f[17] == "1";
  r.wall_ms = num(18);
  return r;
}

/// Reads a file written by write(); the header must match exactly.
inline std::vector<ResultRow> read(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw ParseError("unexpected header");
  std::vector<ResultRow> rows;
  std::size_t number = 1;
  while (std::getline(is, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      rows.push_back(parse_row(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace fogsplit::csv

#endif  // FOGSPLIT_CSV_HPP
