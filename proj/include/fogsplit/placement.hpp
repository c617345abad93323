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

#ifndef FOGSPLIT_PLACEMENT_HPP
#define FOGSPLIT_PLACEMENT_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fogsplit/power_model.hpp"
#include "fogsplit/topology.hpp"
#include "fogsplit/workload.hpp"

namespace fogsplit {

/// Absolute tolerance on per-demand flow conservation, in MIPS.
inline constexpr double kConservationTolerance = 1e-9;

struct Allocation {
  NodeId host = kNoNode;
  double mips = 0.0;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Per-demand list of (host, MIPS share), aligned with DemandSet::demands.
/// Hosts appear in ascending id order.
struct Placement {
  std::vector<std::vector<Allocation>> by_demand;

  friend bool operator==(const Placement&, const Placement&) = default;
};

enum class Layer : std::uint8_t { Iot, AccessFog, EdgeFog, Metro, Core, Cloud };
inline constexpr std::size_t kLayerCount = 6;

inline constexpr Layer layer_of(NodeKind kind) {
  switch (kind) {
    case NodeKind::IotDevice: return Layer::Iot;
    case NodeKind::AccessFog: return Layer::AccessFog;
    case NodeKind::EdgeFog: return Layer::EdgeFog;
    case NodeKind::MetroSwitch:
    case NodeKind::MetroRouter: return Layer::Metro;
    case NodeKind::CoreNode: return Layer::Core;
    case NodeKind::CloudLanSwitch:
    case NodeKind::CloudLanRouter:
    case NodeKind::CloudServer: return Layer::Cloud;
  }
  return Layer::Cloud;
}

inline constexpr std::string_view to_string(Layer layer) {
  constexpr std::array<std::string_view, kLayerCount> names = {
      "iot", "accessfog", "edgefog", "metro", "core", "cloud"};
  return names[static_cast<std::size_t>(layer)];
}

struct DeviceLoad {
  double traffic_gbps = 0.0;
  double cpu_mips = 0.0;
  bool network_active = false;
  bool processing_active = false;
};

/// Indexed by NodeId.
using DeviceLoadLedger = std::vector<DeviceLoad>;

struct SolverStats {
  std::string solver;
  std::uint64_t nodes_explored = 0;
  double bound_gap = 0.0;  // relative; 0 when proven optimal
  double wall_ms = 0.0;
  bool optimal = true;
};

struct SolveResult {
  Placement placement;
  double total_w = 0.0;
  double network_w = 0.0;
  double processing_w = 0.0;
  std::array<double, kLayerCount> layer_w{};
  DeviceLoadLedger ledger;
  SolverStats stats;

  double layer(Layer l) const { return layer_w[static_cast<std::size_t>(l)]; }
};

/// A placement that breaks conservation, host eligibility or a device
/// capacity. `device` names the offending node when there is one.
class InfeasiblePlacement : public std::runtime_error {
 public:
  InfeasiblePlacement(const std::string& what, NodeId device = kNoNode)
      : std::runtime_error(what), device_(device) {}
  NodeId device() const { return device_; }

 private:
  NodeId device_;
};

/// Traffic and CPU carried by every device. Every remote host of a demand
/// receives the full stream over path(source, host); local shares carry none.
inline DeviceLoadLedger build_ledger(const Topology& topology, const DemandSet& demands,
                                     const Placement& placement) {
  if (placement.by_demand.size() != demands.size()) {
    throw InfeasiblePlacement("placement covers " +
                              std::to_string(placement.by_demand.size()) + " demands, expected " +
                              std::to_string(demands.size()));
  }
  DeviceLoadLedger ledger(topology.size());
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const Demand& d = demands.demands[i];
    double placed = 0.0;
    const auto& allocs = placement.by_demand[i];
    for (std::size_t a = 0; a < allocs.size(); ++a) {
      const Allocation& alloc = allocs[a];
      const Node& host = topology.node(alloc.host);
      if (!is_processing_capable(host.kind)) {
        throw InfeasiblePlacement("demand " + std::to_string(d.id) + " placed on non-processing node " +
                                      std::to_string(alloc.host),
                                  alloc.host);
      }
      if (!(alloc.mips > 0.0)) {
        throw InfeasiblePlacement("demand " + std::to_string(d.id) +
                                      " has a non-positive allocation on node " +
                                      std::to_string(alloc.host),
                                  alloc.host);
      }
      for (std::size_t b = 0; b < a; ++b) {
        if (allocs[b].host == alloc.host) {
          throw InfeasiblePlacement("demand " + std::to_string(d.id) + " lists node " +
                                        std::to_string(alloc.host) + " twice",
                                    alloc.host);
        }
      }
      placed += alloc.mips;
      DeviceLoad& h = ledger[alloc.host];
      h.cpu_mips += alloc.mips;
      h.processing_active = true;
      for (NodeId v : topology.path(d.source, alloc.host)) {
        ledger[v].traffic_gbps += d.traffic_gbps;
        ledger[v].network_active = true;
      }
    }
    if (std::abs(placed - d.cpu_mips) > kConservationTolerance) {
      throw InfeasiblePlacement("demand " + std::to_string(d.id) + " places " +
                                std::to_string(placed) + " of " + std::to_string(d.cpu_mips) +
                                " MIPS");
    }
  }
  return ledger;
}

/// Total, network and processing power of a placement. This is the only
/// place power is computed for reporting; solvers use it on their output.
inline SolveResult evaluate(const Topology& topology, const ProfileCatalog& catalog,
                            const DemandSet& demands, const Placement& placement) {
  SolveResult r;
  r.placement = placement;
  r.ledger = build_ledger(topology, demands, placement);

  for (const Node& n : topology.nodes()) {
    const DeviceLoad& load = r.ledger[n.id];
    const DeviceProfile& profile = catalog[n.kind];
    const auto layer = static_cast<std::size_t>(layer_of(n.kind));
    if (profile.network) {
      const SubsystemProfile& net = *profile.network;
      if (load.traffic_gbps > net.capacity * (1.0 + 1e-9)) {
        throw InfeasiblePlacement("network capacity exceeded on node " + std::to_string(n.id) +
                                      " (" + std::string(to_string(n.kind)) + "): " +
                                      std::to_string(load.traffic_gbps) + " > " +
                                      std::to_string(net.capacity) + " Gbps",
                                  n.id);
      }
      const double w = subsystem_power(net, std::min(load.traffic_gbps, net.capacity),
                                       load.network_active);
      r.network_w += w;
      r.layer_w[layer] += w;
    }
    if (profile.processing) {
      const SubsystemProfile& cpu = *profile.processing;
      if (!cpu.pooled && load.cpu_mips > cpu.capacity * (1.0 + 1e-9)) {
        throw InfeasiblePlacement("processing capacity exceeded on node " + std::to_string(n.id) +
                                      " (" + std::string(to_string(n.kind)) + "): " +
                                      std::to_string(load.cpu_mips) + " > " +
                                      std::to_string(cpu.capacity) + " MIPS",
                                  n.id);
      }
      const double mips = cpu.pooled ? load.cpu_mips : std::min(load.cpu_mips, cpu.capacity);
      const double w = subsystem_power(cpu, mips, load.processing_active);
      r.processing_w += w;
      r.layer_w[layer] += w;
    }
  }
  r.total_w = r.network_w + r.processing_w;
  return r;
}

/// Solver-side post-check: split cardinality and minimum share size on top
/// of what evaluate() already enforces.
inline void check_split_limits(const Placement& placement, std::size_t max_splits,
                               double min_allocation) {
  for (std::size_t i = 0; i < placement.by_demand.size(); ++i) {
    const auto& allocs = placement.by_demand[i];
    if (allocs.size() > max_splits) {
      throw InfeasiblePlacement("demand index " + std::to_string(i) + " uses " +
                                std::to_string(allocs.size()) + " hosts, limit " +
                                std::to_string(max_splits));
    }
    for (const Allocation& a : allocs) {
      if (a.mips < min_allocation * (1.0 - 1e-9)) {
        throw InfeasiblePlacement("demand index " + std::to_string(i) + " share on node " +
                                      std::to_string(a.host) + " below minimum allocation",
                                  a.host);
      }
    }
  }
}

}  // namespace fogsplit

#endif  // FOGSPLIT_PLACEMENT_HPP
