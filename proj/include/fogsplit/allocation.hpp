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

#ifndef FOGSPLIT_ALLOCATION_HPP
#define FOGSPLIT_ALLOCATION_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "fogsplit/min_cost_flow.hpp"
#include "fogsplit/placement.hpp"
#include "fogsplit/power_model.hpp"
#include "fogsplit/topology.hpp"
#include "fogsplit/workload.hpp"

namespace fogsplit {

/// Host sets per demand, aligned with DemandSet::demands.
using Activations = std::vector<std::vector<NodeId>>;

/// Cheapest MIPS split for fixed host sets. Every listed host receives at
/// least `min_allocation`; the rest is routed as a transportation problem
/// with per-MIPS cost equal to the host's marginal processing cost. Network
/// power does not depend on the split once hosts are fixed. Returns nullopt
/// when the host sets cannot absorb the demands.
inline std::optional<Placement> allocate_shares(const Topology& topology,
                                                const ProfileCatalog& catalog,
                                                const DemandSet& demands,
                                                const Activations& activations,
                                                double min_allocation) {
  if (activations.size() != demands.size()) return std::nullopt;
  const std::size_t nd = demands.size();

  std::map<NodeId, std::size_t> host_index;  // ordered by node id
  for (const auto& hosts : activations) {
    for (NodeId h : hosts) host_index.emplace(h, 0);
  }
  std::vector<NodeId> hosts;
  for (auto& [id, idx] : host_index) {
    idx = hosts.size();
    hosts.push_back(id);
  }

  std::vector<double> residual_cap(hosts.size());
  std::vector<double> cost(hosts.size());
  for (std::size_t h = 0; h < hosts.size(); ++h) {
    const Node& node = topology.node(hosts[h]);
    if (!is_processing_capable(node.kind)) return std::nullopt;
    const SubsystemProfile& cpu = *catalog[node.kind].processing;
    residual_cap[h] = cpu.pooled ? std::numeric_limits<double>::infinity() : cpu.capacity;
    cost[h] = marginal_cost(cpu);
  }
  std::vector<double> residual_demand(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    const auto& list = activations[d];
    if (list.empty()) return std::nullopt;
    residual_demand[d] = demands.demands[d].cpu_mips - min_allocation * static_cast<double>(list.size());
    if (residual_demand[d] < -1e-9) return std::nullopt;
    residual_demand[d] = std::max(residual_demand[d], 0.0);
    for (NodeId h : list) residual_cap[host_index[h]] -= min_allocation;
  }
  for (double c : residual_cap) {
    if (c < -1e-9) return std::nullopt;
  }

  // 0 = source, 1 = sink, then demands, then hosts.
  MinCostFlow flow(2 + nd + hosts.size());
  double total = 0.0;
  for (std::size_t d = 0; d < nd; ++d) {
    flow.add_arc(0, 2 + d, residual_demand[d], 0.0);
    total += residual_demand[d];
  }
  std::vector<std::vector<std::size_t>> share_arcs(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    std::vector<NodeId> sorted = activations[d];
    std::sort(sorted.begin(), sorted.end());
    for (NodeId h : sorted) {
      share_arcs[d].push_back(
          flow.add_arc(2 + d, 2 + nd + host_index[h], residual_demand[d], 0.0));
    }
  }
  for (std::size_t h = 0; h < hosts.size(); ++h) {
    const double cap = std::max(residual_cap[h], 0.0);
    flow.add_arc(2 + nd + h, 1, std::isinf(cap) ? total : cap, cost[h]);
  }
  const auto result = flow.solve(0, 1, total);
  if (result.flow < total - 1e-9) return std::nullopt;

  Placement p;
  p.by_demand.resize(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    std::vector<NodeId> sorted = activations[d];
    std::sort(sorted.begin(), sorted.end());
    double placed = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      const double mips = min_allocation + flow.flow(share_arcs[d][k]);
      p.by_demand[d].push_back({sorted[k], mips});
      placed += mips;
    }
    // Fold rounding residue into the largest share so conservation is exact.
    const double residue = demands.demands[d].cpu_mips - placed;
    if (residue != 0.0) {
      auto it = std::max_element(p.by_demand[d].begin(), p.by_demand[d].end(),
                                 [](const Allocation& a, const Allocation& b) { return a.mips < b.mips; });
      it->mips += residue;
    }
  }
  return p;
}

}  // namespace fogsplit

#endif  // FOGSPLIT_ALLOCATION_HPP
