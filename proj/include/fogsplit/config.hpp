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


#ifndef FOGSPLIT_CONFIG_HPP
#define FOGSPLIT_CONFIG_HPP

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fogsplit/scenarios.hpp"

namespace fogsplit {

/// Unreadable, malformed or invalid configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace config_detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

inline double to_double(std::string_view text, const std::string& where) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError(where + ": expected a number, got '" + t + "'");
  }
  return v;
}

inline std::size_t to_count(std::string_view text, const std::string& where) {
  const std::string t = trim(text);
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size()) {
    throw ConfigError(where + ": expected a non-negative integer, got '" + t + "'");
  }
  return v;
}

inline bool to_bool(std::string_view text, const std::string& where) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(where + ": expected true or false, got '" + t + "'");
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace config_detail

/**
 * \brief Parses a value list: comma separated items, each a number or an
 * inclusive range "a..b" with an optional step "a..b:step" (default 1).
 * "1..3, 5" gives {1, 2, 3, 5}.
 */
inline std::vector<double> parse_range(std::string_view text, const std::string& where = "range") {
  using namespace config_detail;
  std::vector<double> out;
  for (const std::string& item : split(text, ',')) {
    if (item.empty()) throw ConfigError(where + ": empty item in '" + std::string(text) + "'");
    const std::size_t dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_double(item, where));
      continue;
    }
    std::string hi_text = item.substr(dots + 2);
    double step = 1.0;
    if (const std::size_t colon = hi_text.find(':'); colon != std::string::npos) {
      step = to_double(hi_text.substr(colon + 1), where);
      hi_text = hi_text.substr(0, colon);
    }
    const double lo = to_double(item.substr(0, dots), where);
    const double hi = to_double(hi_text, where);
    if (!(step > 0.0)) throw ConfigError(where + ": range step must be > 0");
    if (hi < lo) throw ConfigError(where + ": range '" + item + "' is decreasing");
    // Integer stepping keeps the grid free of accumulated rounding.
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    if (n > 100000) throw ConfigError(where + ": range '" + item + "' is too long");
    for (std::size_t i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  }
  return out;
}

inline std::vector<std::size_t> parse_k_range(std::string_view text,
                                              const std::string& where = "K") {
  std::vector<std::size_t> out;
  for (double v : parse_range(text, where)) {
    if (v < 1.0 || v != std::floor(v)) {
      throw ConfigError(where + ": K values must be positive integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

/// A parsed configuration plus the bytes it came from.
struct LoadedConfig {
  ScenarioConfig config;
  std::string text;
};

namespace config_detail {

inline void set_profile_field(ProfileCatalog& catalog, const std::string& key,
                              const std::string& value) {
  const std::string where = "profiles." + key;
  const auto parts = split(key, '.');
  if (parts.size() != 3) {
    throw ConfigError(where + ": expected <kind>.<net|cpu>.<field>");
  }
  NodeKind kind{};
  try {
    kind = node_kind_from_string(parts[0]);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  DeviceProfile& device = catalog.at(kind);
  std::optional<SubsystemProfile>* sub = nullptr;
  if (parts[1] == "net") sub = &device.network;
  if (parts[1] == "cpu") sub = &device.processing;
  if (sub == nullptr) throw ConfigError(where + ": subsystem must be net or cpu");
  if (!sub->has_value()) {
    throw ConfigError(where + ": " + parts[0] + " has no " + parts[1] + " subsystem");
  }
  SubsystemProfile& s = **sub;
  const std::string& field = parts[2];
  if (field == "max_w") {
    s.max_w = to_double(value, where);
  } else if (field == "idle_w") {
    s.idle_w = to_double(value, where);
  } else if (field == "capacity") {
    s.capacity = to_double(value, where);
  } else if (field == "pue") {
    s.pue = to_double(value, where);
  } else if (field == "sharing") {
    const std::string v = trim(value);
    if (v == "dedicated") {
      s.sharing = Sharing::Dedicated;
    } else if (v == "shared") {
      s.sharing = Sharing::Shared;
    } else {
      throw ConfigError(where + ": expected dedicated or shared");
    }
  } else {
    throw ConfigError(where + ": unknown field '" + field + "'");
  }
}

}  // namespace config_detail

/// Parses configuration text. Unknown sections and keys are errors.
inline ScenarioConfig parse_config(const std::string& text, const std::string& origin = "config") {
  using namespace config_detail;
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  ScenarioConfig c;
  c.traffic_mbps.clear();
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(origin + ": key '" + section + "' outside any section");
    }
    for (const auto& [key, node] : body) {
      const std::string& v = node.data();
      const std::string where = section + "." + key;
      if (section == "scenario") {
        if (key == "name") {
          c.name = trim(v);
        } else if (key == "output") {
          c.output = trim(v);
        } else if (key == "timing") {
          c.timing = to_bool(v, where);
        } else {
          throw ConfigError(where + ": unknown key");
        }
      } else if (section == "topology") {
        if (key == "sites") {
          c.sites = to_count(v, where);
        } else if (key == "iot_per_site") {
          c.iot_per_site = to_count(v, where);
        } else if (key == "core_hops") {
          c.core_hops = to_count(v, where);
        } else {
          throw ConfigError(where + ": unknown key");
        }
      } else if (section == "demands") {
        if (key == "active_iot") {
          c.active_iot_count = to_count(v, where);
        } else if (key == "sources") {
          c.sources.clear();
          for (const std::string& s : split(v, ',')) {
            const std::size_t id = to_count(s, where);
            if (id >= kNoNode) throw ConfigError(where + ": node id out of range");
            c.sources.push_back(static_cast<NodeId>(id));
          }
        } else if (key == "instructions_per_bit") {
          c.instructions_per_bit = to_double(v, where);
        } else {
          throw ConfigError(where + ": unknown key");
        }
      } else if (section == "sweep") {
        if (key == "traffic_mbps") {
          c.traffic_mbps = parse_range(v, where);
        } else if (key == "k") {
          c.k_values = parse_k_range(v, where);
        } else {
          throw ConfigError(where + ": unknown key");
        }
      } else if (section == "solver") {
        try {
          if (key == "solver") {
            c.solver = solver_kind_from_string(trim(v));
          } else if (key == "candidate_policy") {
            c.options.policy = candidate_policy_from_string(trim(v));
          } else if (key == "node_budget") {
            c.options.node_budget = to_count(v, where);
          } else if (key == "time_budget_s") {
            c.options.time_budget_s = to_double(v, where);
          } else if (key == "rel_gap") {
            c.options.rel_gap = to_double(v, where);
          } else if (key == "min_allocation") {
            c.options.min_allocation = to_double(v, where);
          } else if (key == "symmetry_breaking") {
            c.options.symmetry_breaking = to_bool(v, where);
          } else {
            throw ConfigError(where + ": unknown key");
          }
        } catch (const std::invalid_argument& e) {
          throw ConfigError(where + ": " + e.what());
        }
      } else if (section == "profiles") {
        set_profile_field(c.catalog, key, v);
      } else {
        throw ConfigError(origin + ": unknown section [" + section + "]");
      }
    }
  }
  return c;
}

inline LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  LoadedConfig out;
  out.text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  out.config = parse_config(out.text, path);
  return out;
}

inline constexpr double kStudiedTrafficMinMbps = 1.0;
inline constexpr double kStudiedTrafficMaxMbps = 10.0;

/**
 * \brief Full semantic check: schema, profile invariants, topology and
 * demand feasibility for every traffic value. Returns warnings for settings
 * that are legal but unusual; throws ConfigError naming the first violation.
 */
inline std::vector<std::string> check_config(const ScenarioConfig& c) {
  std::vector<std::string> warnings;
  try {
    validate(c);
    const Topology topology = build_topology(c);
    for (double mbps : c.traffic_mbps) build_demands(c, topology, mbps);
  } catch (const ProfileError& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(std::string("demands: ") + e.what());
  }
  for (double mbps : c.traffic_mbps) {
    if (mbps < kStudiedTrafficMinMbps || mbps > kStudiedTrafficMaxMbps) {
      std::ostringstream os;
      os << "traffic " << mbps << " Mbps is outside the studied " << kStudiedTrafficMinMbps
         << "-" << kStudiedTrafficMaxMbps << " Mbps range";
      warnings.push_back(os.str());
    }
  }
  if (c.options.time_budget_s > 0.0) {
    warnings.push_back("a time budget makes results depend on machine speed");
  }
  if (c.solver == SolverKind::Exact && c.options.rel_gap > 1e-4) {
    warnings.push_back("rel_gap above 1e-4 weakens the optimality flag");
  }
  return warnings;
}

}  // namespace fogsplit

#endif  // FOGSPLIT_CONFIG_HPP
