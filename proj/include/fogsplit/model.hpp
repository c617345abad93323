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

#ifndef FOGSPLIT_MODEL_HPP
#define FOGSPLIT_MODEL_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "fogsplit/candidates.hpp"
#include "fogsplit/placement.hpp"
#include "fogsplit/power_model.hpp"
#include "fogsplit/topology.hpp"
#include "fogsplit/workload.hpp"

namespace fogsplit {

/// One (demand, candidate host) combination with the cost terms it brings
/// when activated.
struct CandidatePair {
  std::size_t demand = 0;  // index into DemandSet::demands
  NodeId host = kNoNode;
  bool remote = false;
  double max_share = 0.0;  // min(demand cpu, host capacity), MIPS
  double stream_w = 0.0;   // proportional network watts of the full stream
  double cpu_cost = 0.0;   // PUE-weighted watts per hosted MIPS
  std::vector<NodeId> carriers;        // path devices with a network subsystem
  std::vector<NodeId> idle_carriers;   // carriers that charge idle power when active
};

/**
 * \brief Cost coefficients of an instance, precomputed once per solve.
 *
 * Pairs that can never be activated (stream larger than some carrier's
 * capacity, or host too small for the minimum share) are dropped.
 */
class PlacementModel {
 public:
  PlacementModel(const Topology& topology, const ProfileCatalog& catalog,
                 const DemandSet& demands, CandidatePolicy policy, double min_allocation)
      : topology_(&topology), catalog_(&catalog), demands_(&demands),
        min_allocation_(min_allocation) {
    const std::size_t n = topology.size();
    host_capacity_.assign(n, 0.0);
    host_cpu_cost_.assign(n, 0.0);
    host_idle_w_.assign(n, 0.0);
    net_capacity_.assign(n, std::numeric_limits<double>::infinity());
    net_cost_.assign(n, 0.0);
    net_idle_w_.assign(n, 0.0);
    for (const Node& node : topology.nodes()) {
      const DeviceProfile& p = catalog[node.kind];
      if (p.processing) {
        host_capacity_[node.id] = p.processing->pooled ? std::numeric_limits<double>::infinity()
                                                       : p.processing->capacity;
        host_cpu_cost_[node.id] = marginal_cost(*p.processing);
        host_idle_w_[node.id] = activation_cost(*p.processing);
      }
      if (p.network) {
        net_capacity_[node.id] = p.network->capacity;
        net_cost_[node.id] = marginal_cost(*p.network);
        net_idle_w_[node.id] = activation_cost(*p.network);
      }
    }

    first_pair_.push_back(0);
    for (std::size_t d = 0; d < demands.size(); ++d) {
      const Demand& dem = demands.demands[d];
      for (NodeId host : candidate_hosts(topology, dem, policy)) {
        CandidatePair pair;
        pair.demand = d;
        pair.host = host;
        pair.remote = host != dem.source;
        pair.max_share = std::min(dem.cpu_mips, host_capacity_[host]);
        pair.cpu_cost = host_cpu_cost_[host];
        bool fits = pair.max_share >= min_allocation * (1.0 - 1e-12);
        for (NodeId v : topology.path(dem.source, host)) {
          if (!catalog[topology.node(v).kind].network) continue;
          pair.carriers.push_back(v);
          pair.stream_w += net_cost_[v] * dem.traffic_gbps;
          if (net_idle_w_[v] > 0.0) pair.idle_carriers.push_back(v);
          if (dem.traffic_gbps > net_capacity_[v] * (1.0 + 1e-12)) fits = false;
        }
        if (fits) pairs_.push_back(std::move(pair));
      }
      first_pair_.push_back(pairs_.size());
    }
  }

  const Topology& topology() const { return *topology_; }
  const ProfileCatalog& catalog() const { return *catalog_; }
  const DemandSet& demands() const { return *demands_; }
  double min_allocation() const { return min_allocation_; }

  std::span<const CandidatePair> pairs() const { return pairs_; }
  std::size_t pair_begin(std::size_t demand) const { return first_pair_[demand]; }
  std::size_t pair_end(std::size_t demand) const { return first_pair_[demand + 1]; }

  double host_capacity(NodeId n) const { return host_capacity_[n]; }
  double host_cpu_cost(NodeId n) const { return host_cpu_cost_[n]; }
  double host_idle_w(NodeId n) const { return host_idle_w_[n]; }
  double net_capacity(NodeId v) const { return net_capacity_[v]; }
  double net_idle_w(NodeId v) const { return net_idle_w_[v]; }

 private:
  const Topology* topology_;
  const ProfileCatalog* catalog_;
  const DemandSet* demands_;
  double min_allocation_;
  std::vector<CandidatePair> pairs_;
  std::vector<std::size_t> first_pair_;
  std::vector<double> host_capacity_, host_cpu_cost_, host_idle_w_;
  std::vector<double> net_capacity_, net_cost_, net_idle_w_;
};

}  // namespace fogsplit

#endif  // FOGSPLIT_MODEL_HPP
