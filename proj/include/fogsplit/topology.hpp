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

#ifndef FOGSPLIT_TOPOLOGY_HPP
#define FOGSPLIT_TOPOLOGY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fogsplit {

enum class NodeKind : std::uint8_t {
  IotDevice,
  AccessFog,  // ONU
  EdgeFog,    // OLT / metro co-located server
  MetroSwitch,
  MetroRouter,
  CoreNode,  // IP/WDM node
  CloudLanSwitch,
  CloudLanRouter,
  CloudServer,
};

inline constexpr std::size_t kNodeKindCount = 9;

inline constexpr std::size_t index_of(NodeKind kind) {
  return static_cast<std::size_t>(kind);
}

inline constexpr bool is_processing_capable(NodeKind kind) {
  return kind == NodeKind::IotDevice || kind == NodeKind::AccessFog ||
         kind == NodeKind::EdgeFog || kind == NodeKind::CloudServer;
}

inline constexpr std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::IotDevice: return "iot";
    case NodeKind::AccessFog: return "access_fog";
    case NodeKind::EdgeFog: return "edge_fog";
    case NodeKind::MetroSwitch: return "metro_switch";
    case NodeKind::MetroRouter: return "metro_router";
    case NodeKind::CoreNode: return "core";
    case NodeKind::CloudLanSwitch: return "cloud_lan_switch";
    case NodeKind::CloudLanRouter: return "cloud_lan_router";
    case NodeKind::CloudServer: return "cloud_server";
  }
  return "unknown";
}

inline NodeKind node_kind_from_string(std::string_view name) {
  for (std::size_t k = 0; k < kNodeKindCount; ++k) {
    auto kind = static_cast<NodeKind>(k);
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown node kind '" + std::string(name) + "'");
}

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct Node {
  NodeId id = kNoNode;
  NodeKind kind = NodeKind::IotDevice;
  NodeId parent = kNoNode;  // kNoNode only for the cloud server pool
  int site = -1;            // -1 outside the access segment
};

/**
 * \brief The IoT / PON / metro / core / cloud tree.
 *
 * Node ids are dense and assigned in this order: IoT devices (site-major),
 * one AccessFog per site, EdgeFog, MetroSwitch, MetroRouter, the core
 * chain, CloudLanSwitch, CloudLanRouter, CloudServer. The cloud server is
 * the root; every other node has exactly one parent. Immutable after build.
 */
class Topology {
 public:
  static Topology build(std::size_t site_count, std::size_t iot_per_site,
                        std::size_t core_hop_count) {
    if (site_count == 0 || iot_per_site == 0 || core_hop_count == 0) {
      throw std::invalid_argument(
          "topology counts must be >= 1 (sites, iot_per_site, core_hops)");
    }
    Topology t;
    t.site_count_ = site_count;
    t.iot_per_site_ = iot_per_site;
    t.core_hop_count_ = core_hop_count;

    const std::size_t iot_count = site_count * iot_per_site;
    const std::size_t total = iot_count + site_count + 1 + 2 +
                              core_hop_count + 2 + 1;
    t.nodes_.resize(total);
    NodeId next = 0;
    auto add = [&](NodeKind kind, int site) {
      Node& n = t.nodes_[next];
      n.id = next;
      n.kind = kind;
      n.site = site;
      return next++;
    };

    for (std::size_t s = 0; s < site_count; ++s) {
      for (std::size_t i = 0; i < iot_per_site; ++i) {
        t.iot_.push_back(add(NodeKind::IotDevice, static_cast<int>(s)));
      }
    }
    for (std::size_t s = 0; s < site_count; ++s) {
      t.access_fog_.push_back(add(NodeKind::AccessFog, static_cast<int>(s)));
    }
    t.edge_fog_ = add(NodeKind::EdgeFog, -1);

    // Upstream chain from the EdgeFog to the cloud pool.
    std::vector<NodeId> chain;
    t.metro_switch_ = add(NodeKind::MetroSwitch, -1);
    chain.push_back(t.metro_switch_);
    t.metro_router_ = add(NodeKind::MetroRouter, -1);
    chain.push_back(t.metro_router_);
    for (std::size_t h = 0; h < core_hop_count; ++h) {
      t.core_.push_back(add(NodeKind::CoreNode, -1));
      chain.push_back(t.core_.back());
    }
    t.cloud_lan_switch_ = add(NodeKind::CloudLanSwitch, -1);
    chain.push_back(t.cloud_lan_switch_);
    t.cloud_lan_router_ = add(NodeKind::CloudLanRouter, -1);
    chain.push_back(t.cloud_lan_router_);
    t.cloud_server_ = add(NodeKind::CloudServer, -1);
    chain.push_back(t.cloud_server_);

    for (NodeId id : t.iot_) {
      t.nodes_[id].parent = t.access_fog_[t.nodes_[id].site];
    }
    for (NodeId id : t.access_fog_) t.nodes_[id].parent = t.edge_fog_;
    t.nodes_[t.edge_fog_].parent = chain.front();
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      t.nodes_[chain[i]].parent = chain[i + 1];
    }

    t.depth_.assign(total, 0);
    for (NodeId id = 0; id < total; ++id) {
      std::size_t d = 0;
      for (NodeId p = t.nodes_[id].parent; p != kNoNode; p = t.nodes_[p].parent) {
        ++d;
      }
      t.depth_[id] = d;
    }
    return t;
  }

  std::size_t site_count() const { return site_count_; }
  std::size_t iot_per_site() const { return iot_per_site_; }
  std::size_t core_hop_count() const { return core_hop_count_; }
  std::size_t size() const { return nodes_.size(); }

  const std::vector<Node>& nodes() const { return nodes_; }

  const Node& node(NodeId id) const {
    if (id >= nodes_.size()) {
      throw std::out_of_range("unknown node id " + std::to_string(id));
    }
    return nodes_[id];
  }

  std::span<const NodeId> iot_devices() const { return iot_; }
  std::span<const NodeId> access_fogs() const { return access_fog_; }
  std::span<const NodeId> core_nodes() const { return core_; }
  NodeId access_fog_of_site(std::size_t site) const { return access_fog_.at(site); }
  NodeId edge_fog() const { return edge_fog_; }
  NodeId metro_switch() const { return metro_switch_; }
  NodeId metro_router() const { return metro_router_; }
  NodeId cloud_lan_switch() const { return cloud_lan_switch_; }
  NodeId cloud_lan_router() const { return cloud_lan_router_; }
  NodeId cloud_server() const { return cloud_server_; }

  std::vector<NodeId> processing_nodes() const {
    std::vector<NodeId> out;
    for (const Node& n : nodes_) {
      if (is_processing_capable(n.kind)) out.push_back(n.id);
    }
    return out;
  }

  /// Devices whose network subsystem carries a stream from `src` to `dst`,
  /// in traversal order. Empty when src == dst.
  std::vector<NodeId> path(NodeId src, NodeId dst) const {
    const Node& s = node(src);
    const Node& d = node(dst);
    if (s.kind != NodeKind::IotDevice) {
      throw std::invalid_argument("path source must be an IoT device, got " +
                                  std::string(to_string(s.kind)));
    }
    if (!is_processing_capable(d.kind)) {
      throw std::invalid_argument("path destination must be processing-capable, got " +
                                  std::string(to_string(d.kind)));
    }
    if (src == dst) return {};

    std::vector<NodeId> up{src};
    std::vector<NodeId> down{dst};
    NodeId a = src;
    NodeId b = dst;
    while (depth_[a] > depth_[b]) {
      a = nodes_[a].parent;
      up.push_back(a);
    }
    while (depth_[b] > depth_[a]) {
      b = nodes_[b].parent;
      down.push_back(b);
    }
    while (a != b) {
      a = nodes_[a].parent;
      up.push_back(a);
      b = nodes_[b].parent;
      down.push_back(b);
    }
    // `a` is the lowest common ancestor and ends both walks.
    down.pop_back();
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
  }

 private:
  Topology() = default;

  std::size_t site_count_ = 0;
  std::size_t iot_per_site_ = 0;
  std::size_t core_hop_count_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::size_t> depth_;
  std::vector<NodeId> iot_;
  std::vector<NodeId> access_fog_;
  std::vector<NodeId> core_;
  NodeId edge_fog_ = kNoNode;
  NodeId metro_switch_ = kNoNode;
  NodeId metro_router_ = kNoNode;
  NodeId cloud_lan_switch_ = kNoNode;
  NodeId cloud_lan_router_ = kNoNode;
  NodeId cloud_server_ = kNoNode;
};

inline std::vector<NodeId> path(const Topology& topology, NodeId src, NodeId dst) {
  return topology.path(src, dst);
}

}  // namespace fogsplit

#endif  // FOGSPLIT_TOPOLOGY_HPP
