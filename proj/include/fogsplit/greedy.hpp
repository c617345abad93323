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

#ifndef FOGSPLIT_GREEDY_HPP
#define FOGSPLIT_GREEDY_HPP

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <vector>

#include "fogsplit/allocation.hpp"
#include "fogsplit/model.hpp"
#include "fogsplit/placement.hpp"
#include "fogsplit/solve_options.hpp"

namespace fogsplit {

namespace detail {

/// Demand indices by descending cpu, ties by ascending id.
inline std::vector<std::size_t> demand_order(const DemandSet& demands) {
  std::vector<std::size_t> order(demands.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Demand& da = demands.demands[a];
    const Demand& db = demands.demands[b];
    if (da.cpu_mips != db.cpu_mips) return da.cpu_mips > db.cpu_mips;
    return da.id < db.id;
  });
  return order;
}

/// Greedy construction on a prebuilt model; returns the host sets or throws
/// SolverError when some demand cannot be completed.
inline Activations greedy_activations(const PlacementModel& model, std::size_t max_splits) {
  const DemandSet& demands = model.demands();
  const Topology& topology = model.topology();
  const double m = model.min_allocation();
  constexpr double kTol = 1e-9;

  std::vector<double> cpu_left(topology.size());
  std::vector<double> net_left(topology.size());
  std::vector<char> host_on(topology.size(), 0);
  std::vector<char> net_on(topology.size(), 0);
  for (NodeId v = 0; v < topology.size(); ++v) {
    cpu_left[v] = model.host_capacity(v);
    net_left[v] = model.net_capacity(v);
  }

  Activations hosts(demands.size());
  for (std::size_t d : demand_order(demands)) {
    const Demand& dem = demands.demands[d];
    double remaining = dem.cpu_mips;
    std::size_t splits = 0;
    std::vector<char> used(model.pair_end(d) - model.pair_begin(d), 0);

    while (remaining > kTol) {
      const bool last = splits + 1 >= max_splits;
      std::size_t best = std::numeric_limits<std::size_t>::max();
      double best_score = std::numeric_limits<double>::infinity();
      double best_amount = 0.0;
      for (std::size_t p = model.pair_begin(d); p < model.pair_end(d); ++p) {
        if (used[p - model.pair_begin(d)]) continue;
        const CandidatePair& pair = model.pairs()[p];
        bool net_ok = true;
        for (NodeId v : pair.carriers) {
          if (net_left[v] < dem.traffic_gbps * (1.0 - 1e-12)) net_ok = false;
        }
        if (!net_ok) continue;
        const double room = cpu_left[pair.host];
        double amount = 0.0;
        if (room >= remaining * (1.0 - 1e-12)) {
          amount = remaining;
        } else if (last) {
          continue;
        } else {
          amount = std::min(room, remaining - m);
          if (amount < m) continue;
        }
        double incremental = pair.cpu_cost * amount;
        if (!host_on[pair.host]) incremental += model.host_idle_w(pair.host);
        incremental += pair.stream_w;
        for (NodeId v : pair.idle_carriers) {
          if (!net_on[v]) incremental += model.net_idle_w(v);
        }
        const double score = last ? incremental : incremental / amount;
        if (score < best_score) {  // strict: lowest host id wins ties
          best_score = score;
          best = p;
          best_amount = amount;
        }
      }
      if (best == std::numeric_limits<std::size_t>::max()) {
        throw SolverError("greedy: demand " + std::to_string(dem.id) +
                          " cannot be completed within the split limit");
      }
      const CandidatePair& pair = model.pairs()[best];
      used[best - model.pair_begin(d)] = 1;
      cpu_left[pair.host] -= best_amount;
      host_on[pair.host] = 1;
      for (NodeId v : pair.carriers) {
        net_left[v] -= dem.traffic_gbps;
        net_on[v] = 1;
      }
      hosts[d].push_back(pair.host);
      remaining -= best_amount;
      ++splits;
    }
    std::sort(hosts[d].begin(), hosts[d].end());
  }
  return hosts;
}

}  // namespace detail

/// Deterministic heuristic. Each demand (largest first) takes the host with
/// the lowest incremental watts per hostable MIPS, filling it up, until the
/// K-th share, which must fit whole on a single host. The chosen host sets
/// are then re-split optimally by the transportation solver.
inline SolveResult solve_greedy(const Topology& topology, const ProfileCatalog& catalog,
                                const DemandSet& demands, const SolveOptions& options) {
  validate(options);
  const auto start = std::chrono::steady_clock::now();
  const PlacementModel model(topology, catalog, demands, options.policy, options.min_allocation);
  const Activations hosts = detail::greedy_activations(model, options.max_splits);
  auto placement = allocate_shares(topology, catalog, demands, hosts, options.min_allocation);
  if (!placement) throw SolverError("greedy: host sets cannot absorb the demands");
  SolveResult r = evaluate(topology, catalog, demands, *placement);
  check_split_limits(r.placement, options.max_splits, options.min_allocation);
  r.stats.solver = "greedy";
  r.stats.optimal = false;
  r.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace fogsplit

#endif  // FOGSPLIT_GREEDY_HPP
