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

#ifndef FOGSPLIT_EXACT_HPP
#define FOGSPLIT_EXACT_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "fogsplit/allocation.hpp"
#include "fogsplit/dual_simplex.hpp"
#include "fogsplit/greedy.hpp"
#include "fogsplit/model.hpp"
#include "fogsplit/placement.hpp"
#include "fogsplit/solve_options.hpp"

namespace fogsplit {

namespace detail {

/**
 * \brief LP relaxation of the placement problem over a PlacementModel.
 *
 * Per candidate pair p with stream cost s_p, per-MIPS cost c_p and largest
 * share u_p there is an activation a_p and a share fraction w_p (share =
 * u_p w_p). Hosts and network carriers that draw idle power when active get
 * an activation column of their own, tied to every a_p that touches them.
 */
class PlacementLp {
 public:
  /// Pairs of interchangeable demands whose activation-pattern keys must
  /// not increase, with the key weight of each pair. Empty when the LP
  /// carries the ordering rows itself.
  const std::vector<std::pair<std::size_t, std::size_t>>& ordered_demands() const {
    return chain_;
  }
  double key_weight(std::size_t pair) const {
    const auto it = key_weight_.find(a_[pair]);
    return it == key_weight_.end() ? 0.0 : it->second;
  }

  PlacementLp(const PlacementModel& model, std::size_t max_splits, bool symmetry_breaking)
      : model_(&model), max_splits_(max_splits) {
    const auto pairs = model.pairs();
    const DemandSet& demands = model.demands();
    const Topology& topology = model.topology();
    const std::size_t np = pairs.size();
    a_.resize(np);
    w_.resize(np);
    for (std::size_t p = 0; p < np; ++p) {
      a_[p] = lp_.add_column(pairs[p].stream_w, 0.0, 1.0);
      w_[p] = lp_.add_column(pairs[p].cpu_cost * pairs[p].max_share, 0.0, 1.0);
    }
    std::map<NodeId, int> host_col;
    std::map<NodeId, int> carrier_col;
    std::map<NodeId, std::vector<std::size_t>> by_host;
    std::map<NodeId, std::vector<std::size_t>> by_carrier;
    for (std::size_t p = 0; p < np; ++p) {
      by_host[pairs[p].host].push_back(p);
      for (NodeId v : pairs[p].carriers) by_carrier[v].push_back(p);
    }
    for (const auto& [host, list] : by_host) {
      if (model.host_idle_w(host) > 0.0) {
        host_col[host] = lp_.add_column(model.host_idle_w(host), 0.0, 1.0);
        switches_.push_back({host_col[host], model.host_idle_w(host)});
      }
    }
    for (const auto& [v, list] : by_carrier) {
      if (model.net_idle_w(v) > 0.0) {
        carrier_col[v] = lp_.add_column(model.net_idle_w(v), 0.0, 1.0);
        switches_.push_back({carrier_col[v], model.net_idle_w(v)});
      }
    }

    std::vector<lp::Term> terms;
    for (std::size_t d = 0; d < demands.size(); ++d) {
      const double cpu = demands.demands[d].cpu_mips;
      terms.clear();
      for (std::size_t p = model.pair_begin(d); p < model.pair_end(d); ++p) {
        terms.push_back({w_[p], pairs[p].max_share / cpu});
      }
      lp_.add_row(terms, lp::RowSense::Equal, 1.0);
      terms.clear();
      for (std::size_t p = model.pair_begin(d); p < model.pair_end(d); ++p) {
        terms.push_back({a_[p], 1.0});
      }
      if (model.pair_end(d) - model.pair_begin(d) > max_splits) {
        lp_.add_row(terms, lp::RowSense::LessEqual, static_cast<double>(max_splits));
      }
      add_cover_rows(d, cpu, max_splits);
    }
    for (std::size_t p = 0; p < np; ++p) {
      // The share floor of an active pair is left to the column bounds set
      // by fix(); as a row its tiny coefficient ruins the conditioning.
      const lp::Term link[] = {{w_[p], 1.0}, {a_[p], -1.0}};
      lp_.add_row(link, lp::RowSense::LessEqual, 0.0);
    }
    for (const auto& [host, list] : by_host) {
      const auto it = host_col.find(host);
      const double cap = model.host_capacity(host);
      if (std::isfinite(cap)) {
        terms.clear();
        for (std::size_t p : list) terms.push_back({w_[p], pairs[p].max_share / cap});
        if (it != host_col.end()) terms.push_back({it->second, -1.0});
        lp_.add_row(terms, lp::RowSense::LessEqual, it != host_col.end() ? 0.0 : 1.0);
      }
      if (it != host_col.end()) {
        for (std::size_t p : list) {
          const lp::Term on[] = {{a_[p], 1.0}, {it->second, -1.0}};
          lp_.add_row(on, lp::RowSense::LessEqual, 0.0);
        }
      }
    }
    for (const auto& [v, list] : by_carrier) {
      const auto it = carrier_col.find(v);
      const double cap = model.net_capacity(v);
      if (std::isfinite(cap)) {
        double worst = 0.0;
        terms.clear();
        for (std::size_t p : list) {
          const double g = demands.demands[pairs[p].demand].traffic_gbps / cap;
          terms.push_back({a_[p], g});
          worst += g;
        }
        if (worst > 1.0 || it != carrier_col.end()) {
          if (it != carrier_col.end()) terms.push_back({it->second, -1.0});
          lp_.add_row(terms, lp::RowSense::LessEqual, it != carrier_col.end() ? 0.0 : 1.0);
        }
      }
      if (it != carrier_col.end()) {
        for (std::size_t p : list) {
          const lp::Term on[] = {{a_[p], 1.0}, {it->second, -1.0}};
          lp_.add_row(on, lp::RowSense::LessEqual, 0.0);
        }
      }
    }
    // A host switch is on only while the host holds a share (this drops
    // dominated points, never an optimum), so it is dominated by any idle
    // carrier shared by all of the host's pairs. Without a switch the host
    // load fraction plays its role.
    for (const auto& [host, list] : by_host) {
      const auto it = host_col.find(host);
      if (it != host_col.end()) {
        terms.clear();
        terms.push_back({it->second, 1.0});
        for (std::size_t p : list) terms.push_back({a_[p], -1.0});
        lp_.add_row(terms, lp::RowSense::LessEqual, 0.0);
      }
      const double cap = model.host_capacity(host);
      if (it == host_col.end() && !std::isfinite(cap)) continue;
      for (const auto& [v, col] : carrier_col) {
        const bool common = std::all_of(list.begin(), list.end(), [&](std::size_t p) {
          const auto& c = pairs[p].idle_carriers;
          return std::find(c.begin(), c.end(), v) != c.end();
        });
        if (!common) continue;
        terms.clear();
        if (it != host_col.end()) {
          terms.push_back({it->second, 1.0});
        } else {
          for (std::size_t p : list) terms.push_back({w_[p], pairs[p].max_share / cap});
        }
        terms.push_back({col, -1.0});
        lp_.add_row(terms, lp::RowSense::LessEqual, 0.0);
      }
    }
    // Per demand, any positive share lights the carriers of its path.
    for (std::size_t d = 0; d < demands.size(); ++d) {
      const double cpu = demands.demands[d].cpu_mips;
      std::map<NodeId, std::vector<lp::Term>> through;
      for (std::size_t p = model.pair_begin(d); p < model.pair_end(d); ++p) {
        for (NodeId v : pairs[p].idle_carriers) {
          through[v].push_back({w_[p], pairs[p].max_share / cpu});
        }
      }
      for (auto& [v, row] : through) {
        if (row.size() < 2) continue;  // a single pair is covered by a_p <= z_v
        row.push_back({carrier_col.at(v), -1.0});
        lp_.add_row(row, lp::RowSense::LessEqual, 0.0);
      }
    }
    add_global_cover_rows(by_host);
    add_capacity_rounding_rows(by_host, host_col);
    if (symmetry_breaking) add_symmetry_rows(by_host, topology);
  }

  /// Activation column of a host or carrier that draws idle power.
  struct Switch {
    int col;
    double idle_w;
  };

  lp::DualSimplex& lp() { return lp_; }
  int a(std::size_t p) const { return a_[p]; }
  int w(std::size_t p) const { return w_[p]; }
  const std::vector<Switch>& switches() const { return switches_; }

  void fix_switch(std::size_t i, int state) {
    const int col = switches_[i].col;
    if (state < 0) {
      lp_.set_bounds(col, 0.0, 1.0);
    } else {
      lp_.set_bounds(col, state, state);
    }
  }

  /// Smallest share fraction an active pair may take.
  double share_floor(std::size_t p) const {
    return std::min(1.0, model_->min_allocation() / model_->pairs()[p].max_share);
  }

  /// Fixes a_p to 0, 1 or frees it (-1), with the matching share bounds.
  void fix(std::size_t p, int state) {
    switch (state) {
      case 0:
        lp_.set_bounds(a_[p], 0.0, 0.0);
        lp_.set_bounds(w_[p], 0.0, 0.0);
        break;
      case 1:
        lp_.set_bounds(a_[p], 1.0, 1.0);
        lp_.set_bounds(w_[p], share_floor(p), 1.0);
        break;
      default:
        lp_.set_bounds(a_[p], 0.0, 1.0);
        lp_.set_bounds(w_[p], 0.0, 1.0);
        break;
    }
  }

 private:
  // With at most K hosts per demand, any host set whose K largest shares
  // fall short of the demand is infeasible. So for every share threshold t,
  // if j-1 hosts at or above t plus K-j+1 hosts below it cannot cover the
  // demand, at least j activations must come from hosts at or above t.
  void add_cover_rows(std::size_t d, double cpu, std::size_t max_splits) {
    const auto pairs = model_->pairs();
    std::vector<double> u;
    for (std::size_t p = model_->pair_begin(d); p < model_->pair_end(d); ++p) {
      u.push_back(pairs[p].max_share);
    }
    std::sort(u.begin(), u.end(), std::greater<>());
    auto top = [&](std::size_t from, std::size_t to, std::size_t count) {
      double sum = 0.0;
      for (std::size_t i = from; i < to && count > 0; ++i, --count) sum += u[i];
      return sum;
    };
    const double slack = 1e-9 * std::max(1.0, cpu);
    std::vector<lp::Term> terms;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (i + 1 < u.size() && u[i + 1] == u[i]) continue;
      const std::size_t above = i + 1;  // hosts with share >= u[i]
      std::size_t need = 0;
      for (std::size_t j = 1; j <= std::min(max_splits, above); ++j) {
        const double best = top(0, above, j - 1) + top(above, u.size(), max_splits - j + 1);
        if (best < cpu - slack) need = j;
      }
      if (need == 0) continue;
      const double t = u[i];
      terms.clear();
      for (std::size_t p = model_->pair_begin(d); p < model_->pair_end(d); ++p) {
        if (pairs[p].max_share >= t) terms.push_back({a_[p], 1.0});
      }
      lp_.add_row(terms, lp::RowSense::GreaterEqual, static_cast<double>(need));
    }
  }

  // Hosts below a capacity threshold can absorb at most their summed
  // capacity; the remainder R must sit on the larger hosts, whose pairs hold
  // at most u_max each, so at least ceil(R / u_max) of them are active.
  void add_global_cover_rows(const std::map<NodeId, std::vector<std::size_t>>& by_host) {
    const auto pairs = model_->pairs();
    double total = 0.0;
    for (const Demand& d : model_->demands().demands) total += d.cpu_mips;
    std::vector<double> thresholds;
    for (const auto& [host, list] : by_host) thresholds.push_back(model_->host_capacity(host));
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    std::vector<lp::Term> terms;
    for (double t : thresholds) {
      double small = 0.0;
      double u_max = 0.0;
      terms.clear();
      for (const auto& [host, list] : by_host) {
        const double cap = model_->host_capacity(host);
        if (cap < t) {
          small += cap;
          continue;
        }
        for (std::size_t p : list) {
          terms.push_back({a_[p], 1.0});
          u_max = std::max(u_max, pairs[p].max_share);
        }
      }
      const double rest = total - small;
      if (rest <= 0.0 || u_max <= 0.0) continue;
      const double need = std::ceil(rest / u_max - 1e-9);
      if (need >= 1.0) lp_.add_row(terms, lp::RowSense::GreaterEqual, need);
    }
  }

  // Mixed-integer rounding of the aggregate capacity balance. For hosts S of
  // one capacity c that charge idle power, with smaller hosts counted at
  // full capacity and larger ones contributing their load X:
  //   c * sum(y_S) + X >= R   implies   sum(y_S) + X / (c f) >= ceil(R / c)
  // where f is the fractional part of R / c.
  void add_capacity_rounding_rows(const std::map<NodeId, std::vector<std::size_t>>& by_host,
                                  const std::map<NodeId, int>& host_col) {
    const auto pairs = model_->pairs();
    double total = 0.0;
    for (const Demand& d : model_->demands().demands) total += d.cpu_mips;
    std::vector<double> classes;
    for (const auto& [host, col] : host_col) {
      if (std::isfinite(model_->host_capacity(host))) classes.push_back(model_->host_capacity(host));
    }
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    std::vector<lp::Term> terms;
    for (double c : classes) {
      double counted = 0.0;
      std::vector<int> members;
      std::vector<std::size_t> larger;
      for (const auto& [host, list] : by_host) {
        const double cap = model_->host_capacity(host);
        const auto it = host_col.find(host);
        if (cap == c && it != host_col.end()) {
          members.push_back(it->second);
        } else if (cap <= c) {
          counted += cap;
        } else {
          larger.insert(larger.end(), list.begin(), list.end());
        }
      }
      const double b = (total - counted) / c;
      if (b <= 1e-9 || members.empty()) continue;
      double whole = std::floor(b);
      double f = b - whole;
      if (f < 1e-9) {
        f = 1.0;
        whole -= 1.0;
      }
      terms.clear();
      for (int col : members) terms.push_back({col, 1.0});
      for (std::size_t p : larger) terms.push_back({w_[p], pairs[p].max_share / (c * f)});
      lp_.add_row(terms, lp::RowSense::GreaterEqual, whole + 1.0);
    }
  }

  // Loads of interchangeable hosts are ordered so that only one member of
  // each symmetry class of solutions stays feasible:
  //  * idle IoT devices of one site (no demand originates there),
  //  * whole sites without any source,
  //  * identical demands whose sources sit in the same site.
  void add_symmetry_rows(const std::map<NodeId, std::vector<std::size_t>>& by_host,
                         const Topology& topology) {
    const auto pairs = model_->pairs();
    const DemandSet& demands = model_->demands();
    std::vector<char> is_source(topology.size(), 0);
    std::vector<char> site_has_source(topology.site_count(), 0);
    for (const Demand& d : demands.demands) {
      is_source[d.source] = 1;
      site_has_source[static_cast<std::size_t>(topology.node(d.source).site)] = 1;
    }
    auto load_terms = [&](NodeId host, double sign, std::vector<lp::Term>& out) {
      const auto it = by_host.find(host);
      if (it == by_host.end()) return;
      for (std::size_t p : it->second) out.push_back({w_[p], sign * pairs[p].max_share});
    };
    std::vector<lp::Term> terms;
    for (std::size_t s = 0; s < topology.site_count(); ++s) {
      NodeId prev = kNoNode;
      for (NodeId id : topology.iot_devices()) {
        if (topology.node(id).site != static_cast<int>(s) || is_source[id]) continue;
        if (!by_host.count(id)) continue;
        if (prev != kNoNode) {
          terms.clear();
          load_terms(prev, 1.0, terms);
          load_terms(id, -1.0, terms);
          lp_.add_row(terms, lp::RowSense::GreaterEqual, 0.0);
        }
        prev = id;
      }
    }
    auto site_terms = [&](std::size_t s, double sign, std::vector<lp::Term>& out) {
      for (NodeId id : topology.iot_devices()) {
        if (topology.node(id).site == static_cast<int>(s)) load_terms(id, sign, out);
      }
      load_terms(topology.access_fog_of_site(s), sign, out);
    };
    std::optional<std::size_t> prev_site;
    for (std::size_t s = 0; s < topology.site_count(); ++s) {
      if (site_has_source[s]) continue;
      if (prev_site) {
        terms.clear();
        site_terms(*prev_site, 1.0, terms);
        site_terms(s, -1.0, terms);
        if (!terms.empty()) lp_.add_row(terms, lp::RowSense::GreaterEqual, 0.0);
      }
      prev_site = s;
    }
    // Key of a demand: its activation pattern read as a number. Own device
    // and every non-IoT host get their own digit, most significant first in
    // branching order; other IoT devices only count. Swapping two
    // same-site demands together with their devices swaps their keys.
    std::vector<NodeId> ranked;
    for (const auto& [host, list] : by_host) {
      if (topology.node(host).kind != NodeKind::IotDevice) ranked.push_back(host);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [&](NodeId x, NodeId y) {
      return model_->host_cpu_cost(x) < model_->host_cpu_cost(y);
    });
    const double base = static_cast<double>(max_splits_ + 1);
    const bool pattern_key = ranked.size() <= kMaxPatternDigits;
    std::map<NodeId, double> digit;
    double weight = base;
    for (auto it = ranked.rbegin(); it != ranked.rend(); ++it) {
      digit[*it] = weight;
      weight *= 2.0;
    }
    const double own_weight = weight;
    auto key_terms = [&](std::size_t d, double sign, std::vector<lp::Term>& out) {
      const NodeId own = demands.demands[d].source;
      const NodeId onu = topology.node(own).parent;
      for (std::size_t p = model_->pair_begin(d); p < model_->pair_end(d); ++p) {
        const NodeId h = pairs[p].host;
        if (!pattern_key) {
          // Share on the cloud plus share on its own AccessFog.
          if (h == topology.cloud_server() || h == onu) {
            out.push_back({w_[p], sign * pairs[p].max_share});
          }
          continue;
        }
        const double c = h == own ? own_weight
                         : topology.node(h).kind == NodeKind::IotDevice ? 1.0
                                                                        : digit.at(h);
        out.push_back({a_[p], sign * c});
      }
    };
    std::vector<char> grouped(demands.size(), 0);
    for (std::size_t d = 0; d < demands.size(); ++d) {
      if (grouped[d]) continue;
      const Demand& a = demands.demands[d];
      std::size_t prev = d;
      for (std::size_t e = d + 1; e < demands.size(); ++e) {
        const Demand& b = demands.demands[e];
        if (grouped[e] || b.cpu_mips != a.cpu_mips || b.traffic_gbps != a.traffic_gbps ||
            topology.node(b.source).site != topology.node(a.source).site) {
          continue;
        }
        grouped[e] = 1;
        terms.clear();
        key_terms(prev, 1.0, terms);
        key_terms(e, -1.0, terms);
        if (pattern_key) {
          // Enforced by the search on fixed activations.
          chain_.push_back({prev, e});
          for (const lp::Term& t : terms) key_weight_[t.col] = std::abs(t.coef);
        } else if (!terms.empty()) {
          lp_.add_row(terms, lp::RowSense::GreaterEqual, 0.0);
        }
        prev = e;
      }
    }
  }

  // Beyond this many non-IoT hosts the pattern key's weights get too wide.
  static constexpr std::size_t kMaxPatternDigits = 12;

  const PlacementModel* model_;
  std::size_t max_splits_;
  std::vector<std::pair<std::size_t, std::size_t>> chain_;  // key(first) >= key(second)
  std::map<int, double> key_weight_;                          // by activation column
  lp::DualSimplex lp_;
  std::vector<int> a_, w_;
  std::vector<Switch> switches_;
};

}  // namespace detail

/**
 * \brief Proven-optimal placement by LP-based branch and bound.
 *
 * Branches on pair activations (up branch first), demands largest first and
 * candidates cheapest first, seeded with the greedy placement as incumbent.
 * Every integral LP point is re-split by the transportation solver and
 * priced by evaluate(). When the node or time budget runs out the best
 * placement found is returned with stats.optimal = false and the remaining
 * relative gap in stats.bound_gap. Nodes whose bound is within
 * options.rel_gap of the incumbent are pruned. `warm_start`, when given,
 * is offered as an extra starting incumbent if it respects the split limit.
 */
inline SolveResult solve_exact(const Topology& topology, const ProfileCatalog& catalog,
                               const DemandSet& demands, const SolveOptions& options,
                               const Placement* warm_start = nullptr) {
  validate(options);
  const auto start = std::chrono::steady_clock::now();
  const PlacementModel model(topology, catalog, demands, options.policy, options.min_allocation);
  const auto pairs = model.pairs();
  const std::size_t np = pairs.size();

  std::optional<SolveResult> incumbent;
  auto offer = [&](const Activations& hosts) {
    auto placement = allocate_shares(topology, catalog, demands, hosts, options.min_allocation);
    if (!placement) return;
    try {
      SolveResult r = evaluate(topology, catalog, demands, *placement);
      check_split_limits(r.placement, options.max_splits, options.min_allocation);
      if (!incumbent || r.total_w < incumbent->total_w) incumbent = std::move(r);
    } catch (const InfeasiblePlacement&) {
    }
  };
  try {
    offer(detail::greedy_activations(model, options.max_splits));
  } catch (const SolverError&) {
  }
  if (warm_start != nullptr && warm_start->by_demand.size() == demands.size()) {
    Activations hosts(demands.size());
    for (std::size_t d = 0; d < demands.size(); ++d) {
      for (const Allocation& a : warm_start->by_demand[d]) {
        if (a.mips > 0.0) hosts[d].push_back(a.host);
      }
    }
    bool fits = true;
    for (const auto& h : hosts) fits = fits && h.size() <= options.max_splits;
    if (fits) offer(hosts);
  }

  // Branching order over pairs.
  std::vector<std::size_t> order;
  for (std::size_t d : detail::demand_order(demands)) {
    std::vector<std::size_t> list;
    for (std::size_t p = model.pair_begin(d); p < model.pair_end(d); ++p) list.push_back(p);
    std::stable_sort(list.begin(), list.end(), [&](std::size_t x, std::size_t y) {
      if (pairs[x].cpu_cost != pairs[y].cpu_cost) return pairs[x].cpu_cost < pairs[y].cpu_cost;
      return pairs[x].host < pairs[y].host;
    });
    order.insert(order.end(), list.begin(), list.end());
  }

  detail::PlacementLp relax(model, options.max_splits, options.symmetry_breaking);
  lp::DualSimplex& lp = relax.lp();
  lp.set_iteration_limit(std::max<std::size_t>(10'000, 50 * (lp.row_count() + lp.column_count())));

  // Lexicographic order of interchangeable demands, propagated over the
  // fixed activations. False when the node breaks the order.
  std::vector<double> key_weight(np);
  for (std::size_t p = 0; p < np; ++p) key_weight[p] = relax.key_weight(p);
  auto propagate_order = [&](std::vector<std::int8_t>& fixed) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [i, j] : relax.ordered_demands()) {
        double max_i = 0.0, min_j = 0.0;
        for (std::size_t p = model.pair_begin(i); p < model.pair_end(i); ++p) {
          if (fixed[p] != 0) max_i += key_weight[p];
        }
        for (std::size_t p = model.pair_begin(j); p < model.pair_end(j); ++p) {
          if (fixed[p] == 1) min_j += key_weight[p];
        }
        if (min_j > max_i) return false;
        for (std::size_t p = model.pair_begin(j); p < model.pair_end(j); ++p) {
          if (fixed[p] < 0 && min_j + key_weight[p] > max_i) {
            fixed[p] = 0;
            changed = true;
          }
        }
        for (std::size_t p = model.pair_begin(i); p < model.pair_end(i); ++p) {
          if (fixed[p] < 0 && max_i - key_weight[p] < min_j) {
            fixed[p] = 1;
            changed = true;
          }
        }
      }
    }
    return true;
  };

  // Binary columns: pair activations first, then host/carrier switches.
  const auto& switches = relax.switches();
  const std::size_t nb = np + switches.size();
  auto column_of = [&](std::size_t b) {
    return b < np ? relax.a(b) : switches[b - np].col;
  };
  auto apply = [&](std::size_t b, int state) {
    if (b < np) {
      relax.fix(b, state);
    } else {
      relax.fix_switch(b - np, state);
    }
  };

  struct Frame {
    std::vector<std::int8_t> fixed;  // per binary column: -1 free, 0 or 1
    double parent_bound;
    std::uint64_t seq;
    std::size_t branched = std::numeric_limits<std::size_t>::max();  // binary fixed last
    double frac = 0.0;  // its LP value in the parent
  };
  // Pseudocosts: bound gain per unit of fractionality, by direction.
  std::array<std::vector<double>, 2> pc_sum{std::vector<double>(nb, 0.0),
                                            std::vector<double>(nb, 0.0)};
  std::array<std::vector<std::uint32_t>, 2> pc_count{std::vector<std::uint32_t>(nb, 0),
                                                     std::vector<std::uint32_t>(nb, 0)};
  std::array<double, 2> pc_total{0.0, 0.0};
  std::array<std::uint64_t, 2> pc_seen{0, 0};
  auto learn = [&](const Frame& f, double bound) {
    if (f.branched >= nb) return;
    const int dir = f.fixed[f.branched] == 1 ? 1 : 0;
    const double dist = dir == 1 ? 1.0 - f.frac : f.frac;
    const double unit = std::max(0.0, bound - f.parent_bound) / std::max(dist, 1e-6);
    pc_sum[dir][f.branched] += unit;
    ++pc_count[dir][f.branched];
    pc_total[dir] += unit;
    ++pc_seen[dir];
  };
  auto pseudocost = [&](int dir, std::size_t b) {
    if (pc_count[dir][b] > 0) return pc_sum[dir][b] / pc_count[dir][b];
    return pc_seen[dir] > 0 ? pc_total[dir] / static_cast<double>(pc_seen[dir]) : 1.0;
  };
  // Tie-break rank: switches by idle watts, then pairs in branching order.
  std::vector<std::size_t> rank(nb);
  {
    std::vector<std::size_t> by_idle(switches.size());
    for (std::size_t i = 0; i < by_idle.size(); ++i) by_idle[i] = i;
    std::stable_sort(by_idle.begin(), by_idle.end(), [&](std::size_t x, std::size_t y) {
      return switches[x].idle_w > switches[y].idle_w;
    });
    std::size_t next = 0;
    for (std::size_t i : by_idle) rank[np + i] = next++;
    for (std::size_t p : order) rank[p] = next++;
  }

  // Best bound first, then the most recently created node.
  auto worse = [](const Frame& x, const Frame& y) {
    if (x.parent_bound != y.parent_bound) return x.parent_bound > y.parent_bound;
    return x.seq < y.seq;
  };
  std::priority_queue<Frame, std::vector<Frame>, decltype(worse)> open(worse);
  std::uint64_t seq = 0;
  std::vector<std::int8_t> applied(nb, -1);

  auto cutoff = [&]() {
    if (!incumbent) return std::numeric_limits<double>::infinity();
    const double v = incumbent->total_w;
    return v - std::max(1e-9, options.rel_gap * std::abs(v));
  };
  // Lowest bound discarded by the cutoff; sets the reported gap.
  double pruned_low = std::numeric_limits<double>::infinity();
  auto prunes = [&](double bound) {
    if (bound < cutoff()) return false;
    pruned_low = std::min(pruned_low, bound);
    return true;
  };
  auto out_of_budget = [&](std::uint64_t nodes) {
    if (nodes >= options.node_budget) return true;
    if (options.time_budget_s > 0.0 && (nodes & 31u) == 0) {
      const double s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (s > options.time_budget_s) return true;
    }
    return false;
  };

  std::uint64_t nodes = 0;
  bool exhausted = false;
  std::optional<Frame> current =
      Frame{std::vector<std::int8_t>(nb, -1), -std::numeric_limits<double>::infinity(), seq++};
  for (;;) {
    if (!current) {
      while (!open.empty() && prunes(open.top().parent_bound)) open.pop();
      if (open.empty()) break;
      current = open.top();
      open.pop();
    }
    if (out_of_budget(nodes)) {
      exhausted = true;
      open.push(std::move(*current));
      break;
    }
    Frame frame = std::move(*current);
    current.reset();
    if (prunes(frame.parent_bound)) continue;
    if (!propagate_order(frame.fixed)) continue;
    ++nodes;

    for (std::size_t b = 0; b < nb; ++b) {
      if (frame.fixed[b] != applied[b]) {
        apply(b, frame.fixed[b]);
        applied[b] = frame.fixed[b];
      }
    }
    const lp::Status status = lp.solve();
    if (status == lp::Status::Infeasible) continue;
    if (status == lp::Status::IterationLimit) {
      // No bound for this node: split it unbounded on the next free binary.
      lp.reset_basis();
      std::size_t branch = nb;
      for (std::size_t p : order) {
        if (frame.fixed[p] < 0) {
          branch = p;
          break;
        }
      }
      for (std::size_t b = np; b < nb && branch == nb; ++b) {
        if (frame.fixed[b] < 0) branch = b;
      }
      if (branch == nb) {
        Activations hosts(demands.size());
        for (std::size_t p = 0; p < np; ++p) {
          if (frame.fixed[p] == 1) hosts[pairs[p].demand].push_back(pairs[p].host);
        }
        offer(hosts);
        continue;
      }
      for (std::int8_t state : {std::int8_t{0}, std::int8_t{1}}) {
        Frame child{frame.fixed, frame.parent_bound, seq++};
        child.fixed[branch] = state;
        open.push(std::move(child));
      }
      continue;
    }
    const double bound = lp.dual_bound();
    learn(frame, bound);
    if (prunes(bound)) continue;

    // Reduced-cost fixing: flipping a nonbasic activation would cost at
    // least |d| on top of the bound.
    const double limit = cutoff();
    for (std::size_t b = 0; b < nb; ++b) {
      const int col = column_of(b);
      if (frame.fixed[b] >= 0 || lp.is_basic(col)) continue;
      const double d = lp.reduced_cost(col);
      const double v = lp.value(col);
      if (v < 0.5 && bound + d >= limit) frame.fixed[b] = 0;
      if (v > 0.5 && bound - d >= limit) frame.fixed[b] = 1;
    }

    // Pseudocost product score over all fractional binaries.
    std::size_t branch = nb;
    double best_score = -1.0;
    double branch_value = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      if (frame.fixed[b] >= 0) continue;
      const double v = lp.value(column_of(b));
      if (v <= 1e-7 || v >= 1.0 - 1e-7) continue;
      const double score = std::max(pseudocost(0, b) * v, 1e-6) *
                           std::max(pseudocost(1, b) * (1.0 - v), 1e-6);
      if (score > best_score * (1.0 + 1e-9) ||
          (score >= best_score * (1.0 - 1e-9) && rank[b] < rank[branch])) {
        best_score = score;
        branch = b;
        branch_value = v;
      }
    }
    // An integral point may still hold an active pair below its share
    // floor; fixing that pair restores the floor.
    bool learnable = true;
    if (branch == nb) {
      for (std::size_t p : order) {
        if (frame.fixed[p] >= 0 || lp.value(relax.a(p)) < 0.5) continue;
        if (lp.value(relax.w(p)) < relax.share_floor(p) - 1e-9) {
          branch = p;
          learnable = false;
          break;
        }
      }
    }
    if (branch == nb) {
      Activations hosts(demands.size());
      for (std::size_t p = 0; p < np; ++p) {
        if (lp.value(relax.a(p)) > 0.5) hosts[pairs[p].demand].push_back(pairs[p].host);
      }
      offer(hosts);
      continue;
    }
    if (!learnable) branch_value = 0.5;
    // Plunge into the up branch; the down branch waits in the queue.
    Frame down{frame.fixed, bound, seq++, branch, branch_value};
    down.fixed[branch] = 0;
    frame.fixed[branch] = 1;
    frame.parent_bound = bound;
    frame.seq = seq++;
    frame.branched = learnable ? branch : nb;
    frame.frac = branch_value;
    if (!learnable) down.branched = nb;
    open.push(std::move(down));
    current = std::move(frame);
  }

  if (!incumbent) {
    if (exhausted) throw SolverError("exact: budget exhausted before any feasible placement");
    throw SolverError("exact: instance is infeasible under the split limit");
  }
  SolveResult r = std::move(*incumbent);
  r.stats.solver = "exact";
  r.stats.nodes_explored = nodes;
  r.stats.optimal = !exhausted;
  double lower = std::min(r.total_w, pruned_low);
  if (exhausted && !open.empty()) lower = std::min(lower, open.top().parent_bound);
  r.stats.bound_gap = r.total_w > 0.0 ? std::max(0.0, (r.total_w - lower) / r.total_w) : 0.0;
  r.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace fogsplit

#endif  // FOGSPLIT_EXACT_HPP
