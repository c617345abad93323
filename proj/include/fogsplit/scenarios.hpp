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


#ifndef FOGSPLIT_SCENARIOS_HPP
#define FOGSPLIT_SCENARIOS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fogsplit/optimizer.hpp"

namespace fogsplit {

/// One sweep: a topology, a set of active IoT devices and the grid of
/// (traffic, K) cells to solve.
struct ScenarioConfig {
  std::string name = "scenario";
  std::size_t sites = 4;
  std::size_t iot_per_site = 5;
  std::size_t core_hops = 4;
  std::size_t active_iot_count = 5;
  std::vector<NodeId> sources;  // explicit sources; overrides active_iot_count
  double instructions_per_bit = kDefaultInstructionsPerBit;
  std::vector<double> traffic_mbps;
  std::vector<std::size_t> k_values{1, 2, 3, 4, 5, 6};
  SolverKind solver = SolverKind::Exact;
  SolveOptions options;  // max_splits is overwritten per cell
  ProfileCatalog catalog = ProfileCatalog::defaults();
  std::string output;
  bool timing = false;  // wall_ms stays 0 otherwise so output is byte-stable
};

struct ResultRow {
  std::string scenario;
  double demand_mips = 0.0;
  double traffic_gbps = 0.0;
  std::size_t k = 1;
  std::string solver;
  double total_w = 0.0;
  double network_w = 0.0;
  double processing_w = 0.0;
  std::array<double, kLayerCount> layer_w{};
  double baseline_w = 0.0;
  double savings_vs_cloud_pct = 0.0;
  double savings_vs_k1_pct = 0.0;
  bool optimal = true;
  double wall_ms = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// A row together with what produced it.
struct SweepCell {
  ResultRow row;
  Placement placement;
  SolverStats stats;
};

/// Percent saved relative to `baseline`.
inline double savings(double total, double baseline) {
  if (!(baseline > 0.0)) throw std::invalid_argument("savings: baseline must be > 0");
  return 100.0 * (baseline - total) / baseline;
}

/// Throws std::invalid_argument naming the first broken field.
inline void validate(const ScenarioConfig& c) {
  if (c.traffic_mbps.empty()) throw std::invalid_argument("sweep: traffic list is empty");
  if (c.k_values.empty()) throw std::invalid_argument("sweep: K list is empty");
  for (std::size_t k : c.k_values) {
    if (k < 1) throw std::invalid_argument("sweep: K values must be >= 1");
  }
  for (double t : c.traffic_mbps) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw std::invalid_argument("sweep: traffic values must be > 0");
    }
  }
  if (c.sources.empty() && c.active_iot_count == 0) {
    throw std::invalid_argument("demands: at least one active IoT device is required");
  }
  if (c.name.empty() || c.name.find_first_of(",\"\n\r") != std::string::npos) {
    throw std::invalid_argument("scenario: name must be non-empty without commas or quotes");
  }
  c.catalog.validate();
  SolveOptions o = c.options;
  o.max_splits = 1;
  validate(o);
}

inline Topology build_topology(const ScenarioConfig& c) {
  return Topology::build(c.sites, c.iot_per_site, c.core_hops);
}

inline DemandSet build_demands(const ScenarioConfig& c, const Topology& topology,
                               double traffic_mbps) {
  DemandSet ds =
      c.sources.empty()
          ? make_demand_set(topology, c.active_iot_count, traffic_mbps, c.instructions_per_bit)
          : make_demand_set(topology, c.sources, traffic_mbps, c.instructions_per_bit);
  for (const Demand& d : ds.demands) validate_demand(topology, c.catalog, d);
  return ds;
}

namespace detail {

inline std::string cell_name(double traffic_mbps, std::size_t k) {
  std::ostringstream os;
  os << "traffic " << traffic_mbps << " Mbps, K=" << k;
  return os.str();
}

}  // namespace detail

/**
 * \brief Solves every (traffic, K) cell of the sweep.
 *
 * Rows come out ordered by traffic then K, both ascending. The baseline is
 * priced once per traffic value. K values are solved in ascending order and
 * the exact solver is warm-started from the previous K's placement, which
 * stays feasible when more splits are allowed. K1 is solved even when it is
 * not part of the sweep so that savings_vs_k1 is always defined.
 * `on_cell` sees each cell as soon as it is done.
 */
inline std::vector<SweepCell> run_sweep(
    const ScenarioConfig& config,
    const std::function<void(const SweepCell&)>& on_cell = nullptr) {
  validate(config);
  const Topology topology = build_topology(config);

  std::vector<double> traffic = config.traffic_mbps;
  std::sort(traffic.begin(), traffic.end());
  traffic.erase(std::unique(traffic.begin(), traffic.end()), traffic.end());
  std::vector<std::size_t> ks = config.k_values;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::vector<std::size_t> solve_ks = ks;
  if (solve_ks.front() != 1) solve_ks.insert(solve_ks.begin(), 1);

  std::vector<SweepCell> out;
  for (double mbps : traffic) {
    const DemandSet demands = build_demands(config, topology, mbps);
    const double baseline = baseline_cloud(topology, config.catalog, demands).total_w;
    std::optional<SolveResult> previous;
    double k1_total = 0.0;
    for (std::size_t k : solve_ks) {
      SolveOptions o = config.options;
      o.max_splits = k;
      SolveResult r;
      try {
        if (config.solver == SolverKind::Exact) {
          r = solve_exact(topology, config.catalog, demands, o,
                          previous ? &previous->placement : nullptr);
        } else {
          r = solve(config.solver, topology, config.catalog, demands, o);
        }
      } catch (const OracleSizeError& e) {
        throw OracleSizeError(detail::cell_name(mbps, k) + ": " + e.what());
      } catch (const SolverError& e) {
        throw SolverError(detail::cell_name(mbps, k) + ": " + e.what());
      }
      if (k == 1) k1_total = r.total_w;
      previous = r;
      if (!std::binary_search(ks.begin(), ks.end(), k)) continue;

      SweepCell cell;
      ResultRow& row = cell.row;
      row.scenario = config.name;
      row.demand_mips = demands.demands.front().cpu_mips;
      row.traffic_gbps = demands.demands.front().traffic_gbps;
      row.k = k;
      row.solver = r.stats.solver;
      row.total_w = r.total_w;
      row.network_w = r.network_w;
      row.processing_w = r.processing_w;
      row.layer_w = r.layer_w;
      row.baseline_w = baseline;
      row.savings_vs_cloud_pct = savings(r.total_w, baseline);
      row.savings_vs_k1_pct = savings(r.total_w, k1_total);
      row.optimal = r.stats.optimal;
      row.wall_ms = config.timing ? r.stats.wall_ms : 0.0;
      cell.placement = r.placement;
      cell.stats = r.stats;
      if (on_cell) on_cell(cell);
      out.push_back(std::move(cell));
    }
  }
  return out;
}

}  // namespace fogsplit

#endif  // FOGSPLIT_SCENARIOS_HPP
