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

#ifndef FOGSPLIT_MIN_COST_FLOW_HPP
#define FOGSPLIT_MIN_COST_FLOW_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fogsplit {

/// Successive shortest paths with Bellman-Ford (queue based) on real-valued
/// capacities. Intended for small transportation networks.
class MinCostFlow {
 public:
  struct Result {
    double flow = 0.0;
    double cost = 0.0;
  };

  explicit MinCostFlow(std::size_t node_count) : adjacency_(node_count) {}

  std::size_t add_arc(std::size_t from, std::size_t to, double capacity, double cost) {
    if (from >= adjacency_.size() || to >= adjacency_.size()) {
      throw std::out_of_range("MinCostFlow: arc endpoint out of range");
    }
    if (capacity < 0.0) throw std::invalid_argument("MinCostFlow: negative capacity");
    const std::size_t id = arcs_.size();
    arcs_.push_back({to, capacity, cost, 0.0});
    arcs_.push_back({from, 0.0, -cost, 0.0});
    adjacency_[from].push_back(id);
    adjacency_[to].push_back(id + 1);
    return id;
  }

  /// Pushes up to `limit` units from source to sink at minimum cost.
  Result solve(std::size_t source, std::size_t sink,
               double limit = std::numeric_limits<double>::infinity()) {
    Result result;
    const std::size_t n = adjacency_.size();
    std::vector<double> dist(n);
    std::vector<std::size_t> via(n);
    std::vector<char> queued(n);
    std::vector<std::size_t> relaxations(n);
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    while (result.flow < limit - kEps) {
      std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
      std::fill(via.begin(), via.end(), kNone);
      std::fill(relaxations.begin(), relaxations.end(), 0);
      dist[source] = 0.0;
      std::deque<std::size_t> queue{source};
      queued.assign(n, 0);
      queued[source] = 1;
      while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        queued[u] = 0;
        for (std::size_t id : adjacency_[u]) {
          const Arc& arc = arcs_[id];
          if (arc.capacity - arc.flow <= kEps) continue;
          const double nd = dist[u] + arc.cost;
          if (nd < dist[arc.to] - kCostEps) {
            dist[arc.to] = nd;
            via[arc.to] = id;
            if (!queued[arc.to] && ++relaxations[arc.to] <= n) {
              queued[arc.to] = 1;
              queue.push_back(arc.to);
            }
          }
        }
      }
      if (via[sink] == kNone) break;

      double push = limit - result.flow;
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        const Arc& arc = arcs_[via[v]];
        push = std::min(push, arc.capacity - arc.flow);
      }
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].flow += push;
        arcs_[via[v] ^ 1].flow -= push;
      }
      result.flow += push;
      result.cost += push * dist[sink];
    }
    return result;
  }

  double flow(std::size_t arc) const { return arcs_.at(arc).flow; }

 private:
  struct Arc {
    std::size_t to;
    double capacity;
    double cost;
    double flow;
  };

  static constexpr double kEps = 1e-12;
  static constexpr double kCostEps = 1e-15;

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

}  // namespace fogsplit

#endif  // FOGSPLIT_MIN_COST_FLOW_HPP
