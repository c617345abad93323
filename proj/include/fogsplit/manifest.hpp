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


#ifndef FOGSPLIT_MANIFEST_HPP
#define FOGSPLIT_MANIFEST_HPP

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <string>
#include <string_view>

#include "json.hpp"  // vendored nlohmann/json

#include "fogsplit/scenarios.hpp"

#ifndef FOGSPLIT_VERSION
#define FOGSPLIT_VERSION "0.0.0"
#endif

namespace fogsplit {

inline constexpr std::string_view kVersion = FOGSPLIT_VERSION;

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// UTC time in ISO 8601, second resolution.
inline std::string utc_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// The settings that determine the result bytes.
inline nlohmann::json effective_settings(const ScenarioConfig& c) {
  nlohmann::json j;
  j["name"] = c.name;
  j["topology"] = {{"sites", c.sites}, {"iot_per_site", c.iot_per_site}, {"core_hops", c.core_hops}};
  j["demands"] = {{"active_iot", c.active_iot_count},
                  {"sources", c.sources},
                  {"instructions_per_bit", c.instructions_per_bit}};
  j["sweep"] = {{"traffic_mbps", c.traffic_mbps}, {"k", c.k_values}};
  j["solver"] = {{"solver", std::string(to_string(c.solver))},
                 {"candidate_policy", std::string(to_string(c.options.policy))},
                 {"node_budget", c.options.node_budget},
                 {"time_budget_s", c.options.time_budget_s},
                 {"rel_gap", c.options.rel_gap},
                 {"min_allocation", c.options.min_allocation},
                 {"symmetry_breaking", c.options.symmetry_breaking}};
  j["timing"] = c.timing;
  return j;
}

struct RunManifest {
  std::string config_path;
  std::string config_checksum;
  nlohmann::json settings;
  std::string started_at;
  std::string finished_at;
  std::size_t rows = 0;
  std::size_t non_optimal_rows = 0;
};

inline nlohmann::json to_json(const RunManifest& m) {
  return {{"version", std::string(kVersion)},
          {"catalog_version", std::string(kCatalogVersion)},
          {"config", {{"path", m.config_path}, {"fnv1a64", m.config_checksum}}},
          {"settings", m.settings},
          {"started_at", m.started_at},
          {"finished_at", m.finished_at},
          {"rows", m.rows},
          {"non_optimal_rows", m.non_optimal_rows}};
}

}  // namespace fogsplit

#endif  // FOGSPLIT_MANIFEST_HPP
