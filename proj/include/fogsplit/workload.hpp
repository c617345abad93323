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

#ifndef FOGSPLIT_WORKLOAD_HPP
#define FOGSPLIT_WORKLOAD_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fogsplit/power_model.hpp"
#include "fogsplit/topology.hpp"

namespace fogsplit {

inline constexpr double kDefaultInstructionsPerBit = 1000.0;

/// One IoT service request. cpu_mips is processing demand, traffic_gbps the
/// stream every remote host of the request must receive.
struct Demand {
  std::size_t id = 0;
  NodeId source = kNoNode;
  double cpu_mips = 0.0;
  double traffic_gbps = 0.0;
};

struct DemandSet {
  std::vector<Demand> demands;
  std::size_t active_iot_count = 0;

  std::size_t size() const { return demands.size(); }
  bool empty() const { return demands.empty(); }
};

/// 1 Mbps at 1000 instructions/bit is 1e9 instructions/s, i.e. 1000 MIPS.
inline double cpu_from_traffic(double traffic_mbps,
                               double instructions_per_bit = kDefaultInstructionsPerBit) {
  if (!(traffic_mbps >= 0.0)) throw std::invalid_argument("cpu_from_traffic: negative traffic");
  if (!(instructions_per_bit > 0.0)) {
    throw std::invalid_argument("cpu_from_traffic: instruction intensity must be > 0");
  }
  return traffic_mbps * instructions_per_bit;
}

inline Demand make_demand(std::size_t id, NodeId source, double traffic_mbps,
                          double instructions_per_bit = kDefaultInstructionsPerBit) {
  return Demand{id, source, cpu_from_traffic(traffic_mbps, instructions_per_bit),
                traffic_mbps / 1000.0};
}

/// Throws std::invalid_argument when the demand breaks its invariants:
/// IoT source, cpu > 0 iff traffic > 0, traffic within the source uplink.
inline void validate_demand(const Topology& topology, const ProfileCatalog& catalog,
                            const Demand& d) {
  const Node& src = topology.node(d.source);
  const std::string tag = "demand " + std::to_string(d.id);
  if (src.kind != NodeKind::IotDevice) {
    throw std::invalid_argument(tag + ": source must be an IoT device");
  }
  if (!(d.cpu_mips > 0.0) || !(d.traffic_gbps > 0.0) || !std::isfinite(d.cpu_mips) ||
      !std::isfinite(d.traffic_gbps)) {
    throw std::invalid_argument(tag + ": cpu and traffic must both be positive");
  }
  const auto& uplink = catalog[NodeKind::IotDevice].network;
  if (uplink && d.traffic_gbps > uplink->capacity * (1.0 + 1e-12)) {
    throw std::invalid_argument(tag + ": traffic exceeds the source uplink capacity");
  }
}

/// Homogeneous demands at explicit sources, ids in list order.
inline DemandSet make_demand_set(const Topology& topology, std::span<const NodeId> sources,
                                 double traffic_mbps,
                                 double instructions_per_bit = kDefaultInstructionsPerBit) {
  DemandSet set;
  set.active_iot_count = sources.size();
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (topology.node(sources[i]).kind != NodeKind::IotDevice) {
      throw std::invalid_argument("demand source " + std::to_string(sources[i]) +
                                  " is not an IoT device");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (sources[j] == sources[i]) {
        throw std::invalid_argument("duplicate demand source " + std::to_string(sources[i]));
      }
    }
    set.demands.push_back(make_demand(i, sources[i], traffic_mbps, instructions_per_bit));
  }
  return set;
}

/// One demand per active IoT device; the first `active_iot_count` devices in
/// site-major order are the sources.
inline DemandSet make_demand_set(const Topology& topology, std::size_t active_iot_count,
                                 double traffic_mbps,
                                 double instructions_per_bit = kDefaultInstructionsPerBit) {
  auto iot = topology.iot_devices();
  if (active_iot_count > iot.size()) {
    throw std::invalid_argument("active IoT count " + std::to_string(active_iot_count) +
                                " exceeds the " + std::to_string(iot.size()) +
                                " IoT devices in the topology");
  }
  return make_demand_set(topology, iot.first(active_iot_count), traffic_mbps,
                         instructions_per_bit);
}

}  // namespace fogsplit

#endif  // FOGSPLIT_WORKLOAD_HPP
