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

#ifndef FOGSPLIT_CANDIDATES_HPP
#define FOGSPLIT_CANDIDATES_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fogsplit/topology.hpp"
#include "fogsplit/workload.hpp"

namespace fogsplit {

/// Which processing nodes may host a share of a demand.
enum class CandidatePolicy : std::uint8_t {
  Peers,      // every processing node, IoT devices of any site included
  SitePeers,  // IoT devices of the source's own site, every fog tier, cloud
  Hierarchy,  // own IoT, own AccessFog, EdgeFog, cloud
};

inline constexpr std::string_view to_string(CandidatePolicy p) {
  switch (p) {
    case CandidatePolicy::Peers: return "peers";
    case CandidatePolicy::SitePeers: return "site-peers";
    case CandidatePolicy::Hierarchy: return "hierarchy";
  }
  return "unknown";
}

inline CandidatePolicy candidate_policy_from_string(std::string_view s) {
  if (s == "peers") return CandidatePolicy::Peers;
  if (s == "site-peers") return CandidatePolicy::SitePeers;
  if (s == "hierarchy") return CandidatePolicy::Hierarchy;
  throw std::invalid_argument("unknown candidate policy '" + std::string(s) +
                              "' (expected peers, site-peers or hierarchy)");
}

/// Candidate hosts of a demand in ascending id order. The cloud is always
/// included.
inline std::vector<NodeId> candidate_hosts(const Topology& topology, const Demand& demand,
                                           CandidatePolicy policy) {
  const Node& src = topology.node(demand.source);
  std::vector<NodeId> out;
  for (const Node& n : topology.nodes()) {
    if (!is_processing_capable(n.kind)) continue;
    bool keep = false;
    switch (policy) {
      case CandidatePolicy::Peers:
        keep = true;
        break;
      case CandidatePolicy::SitePeers:
        keep = n.kind != NodeKind::IotDevice || n.site == src.site;
        break;
      case CandidatePolicy::Hierarchy:
        keep = n.id == src.id || n.id == src.parent || n.kind == NodeKind::EdgeFog ||
               n.kind == NodeKind::CloudServer;
        break;
    }
    if (keep) out.push_back(n.id);
  }
  return out;
}

}  // namespace fogsplit

#endif  // FOGSPLIT_CANDIDATES_HPP
