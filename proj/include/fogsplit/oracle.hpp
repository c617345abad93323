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

#ifndef FOGSPLIT_ORACLE_HPP
#define FOGSPLIT_ORACLE_HPP

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "fogsplit/candidates.hpp"
#include "fogsplit/placement.hpp"
#include "fogsplit/solve_options.hpp"

namespace fogsplit {

inline constexpr std::size_t kOracleMaxDemands = 2;
inline constexpr std::size_t kOracleMaxCandidates = 8;
inline constexpr std::size_t kOracleMaxSplits = 3;

namespace detail {

// Solves the square system in place; false when singular.
inline bool solve_dense(std::vector<std::vector<double>>& a, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    }
    if (std::abs(a[p][c]) < 1e-12) return false;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) b[c] /= a[c][c];
  return true;
}

}  // namespace detail

/**
 * \brief Exhaustive reference solver for tiny instances.
 *
 * Enumerates every host subset of size 1..K per demand. For each
 * combination the MIPS split is a linear program over a small
 * transportation polytope (conservation, minimum share, host capacity);
 * its optimum is attained at a vertex, so every vertex is enumerated by
 * choosing which inequalities are tight, and each feasible one is priced by
 * evaluate(). Shares nothing with the exact solver beyond evaluate().
 */
inline SolveResult brute_force_oracle(const Topology& topology, const ProfileCatalog& catalog,
                                      const DemandSet& demands, const SolveOptions& options) {
  validate(options);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t nd = demands.size();
  const std::size_t k_max = options.max_splits;
  const double m = options.min_allocation;

  std::vector<std::vector<NodeId>> cands(nd);
  std::set<NodeId> all;
  for (std::size_t d = 0; d < nd; ++d) {
    cands[d] = candidate_hosts(topology, demands.demands[d], options.policy);
    all.insert(cands[d].begin(), cands[d].end());
  }
  if (nd > kOracleMaxDemands || all.size() > kOracleMaxCandidates || k_max > kOracleMaxSplits) {
    throw OracleSizeError("oracle size cap exceeded: " + std::to_string(nd) + " demands (max " +
                          std::to_string(kOracleMaxDemands) + "), " + std::to_string(all.size()) +
                          " candidate nodes (max " + std::to_string(kOracleMaxCandidates) +
                          "), K=" + std::to_string(k_max) + " (max " +
                          std::to_string(kOracleMaxSplits) + ")");
  }

  // Host subsets of size 1..K for each demand.
  std::vector<std::vector<std::vector<NodeId>>> subsets(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    std::vector<NodeId> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (!cur.empty()) subsets[d].push_back(cur);
      if (cur.size() == k_max) return;
      for (std::size_t i = from; i < cands[d].size(); ++i) {
        cur.push_back(cands[d][i]);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
  }

  std::optional<SolveResult> best;
  std::uint64_t vertices = 0;

  auto price_combination = [&](const std::vector<const std::vector<NodeId>*>& pick) {
    // Variables: one share per (demand, host).
    struct Var {
      std::size_t demand;
      NodeId host;
    };
    std::vector<Var> vars;
    for (std::size_t d = 0; d < nd; ++d) {
      for (NodeId h : *pick[d]) vars.push_back({d, h});
    }
    const std::size_t nv = vars.size();
    // Inequalities written as g.x <= h.
    std::vector<std::vector<double>> ineq;
    std::vector<double> ineq_rhs;
    for (std::size_t i = 0; i < nv; ++i) {
      std::vector<double> g(nv, 0.0);
      g[i] = -1.0;
      ineq.push_back(g);
      ineq_rhs.push_back(-m);
    }
    std::map<NodeId, std::vector<std::size_t>> by_host;
    for (std::size_t i = 0; i < nv; ++i) by_host[vars[i].host].push_back(i);
    for (const auto& [host, idx] : by_host) {
      const SubsystemProfile& cpu = *catalog[topology.node(host).kind].processing;
      if (cpu.pooled) continue;
      std::vector<double> g(nv, 0.0);
      for (std::size_t i : idx) g[i] = 1.0;
      ineq.push_back(g);
      ineq_rhs.push_back(cpu.capacity);
    }
    const std::size_t free_dims = nv - nd;
    std::vector<std::size_t> tight;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (tight.size() == free_dims) {
        std::vector<std::vector<double>> a;
        std::vector<double> b;
        for (std::size_t d = 0; d < nd; ++d) {
          std::vector<double> row(nv, 0.0);
          for (std::size_t i = 0; i < nv; ++i) {
            if (vars[i].demand == d) row[i] = 1.0;
          }
          a.push_back(row);
          b.push_back(demands.demands[d].cpu_mips);
        }
        for (std::size_t t : tight) {
          a.push_back(ineq[t]);
          b.push_back(ineq_rhs[t]);
        }
        if (!detail::solve_dense(a, b)) return;
        for (std::size_t t = 0; t < ineq.size(); ++t) {
          double lhs = 0.0;
          for (std::size_t i = 0; i < nv; ++i) lhs += ineq[t][i] * b[i];
          if (lhs > ineq_rhs[t] + 1e-7 * std::max(1.0, std::abs(ineq_rhs[t]))) return;
        }
        ++vertices;
        Placement p;
        p.by_demand.resize(nd);
        for (std::size_t i = 0; i < nv; ++i) {
          p.by_demand[vars[i].demand].push_back({vars[i].host, b[i]});
        }
        // Snap conservation onto the first share to absorb elimination noise.
        for (std::size_t d = 0; d < nd; ++d) {
          double sum = 0.0;
          for (const Allocation& a_ : p.by_demand[d]) sum += a_.mips;
          p.by_demand[d].front().mips += demands.demands[d].cpu_mips - sum;
        }
        try {
          SolveResult r = evaluate(topology, catalog, demands, p);
          if (!best || r.total_w < best->total_w) best = std::move(r);
        } catch (const InfeasiblePlacement&) {
        }
        return;
      }
      for (std::size_t t = from; t < ineq.size(); ++t) {
        tight.push_back(t);
        rec(t + 1);
        tight.pop_back();
      }
    };
    rec(0);
  };

  std::vector<const std::vector<NodeId>*> pick(nd);
  std::function<void(std::size_t)> combine = [&](std::size_t d) {
    if (d == nd) {
      price_combination(pick);
      return;
    }
    for (const auto& s : subsets[d]) {
      // Skip subsets that cannot hold the demand even with every host empty.
      double room = 0.0;
      for (NodeId h : s) {
        const SubsystemProfile& cpu = *catalog[topology.node(h).kind].processing;
        room += cpu.pooled ? std::numeric_limits<double>::infinity() : cpu.capacity;
      }
      if (room < demands.demands[d].cpu_mips ||
          m * static_cast<double>(s.size()) > demands.demands[d].cpu_mips) {
        continue;
      }
      pick[d] = &s;
      combine(d + 1);
    }
  };
  if (nd == 0) {
    best = evaluate(topology, catalog, demands, Placement{});
  } else {
    combine(0);
  }
  if (!best) throw SolverError("oracle: instance is infeasible");
  best->stats.solver = "oracle";
  best->stats.nodes_explored = vertices;
  best->stats.optimal = true;
  best->stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return *best;
}

}  // namespace fogsplit

#endif  // FOGSPLIT_ORACLE_HPP
