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

#include "fogsplit/allocation.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fogsplit/dual_simplex.hpp"
#include "fogsplit/min_cost_flow.hpp"

namespace fogsplit {
namespace {

TEST(MinCostFlow, PrefersTheCheapRouteUntilItSaturates) {
  MinCostFlow f(4);
  const auto cheap = f.add_arc(0, 1, 5, 1.0);
  const auto dear = f.add_arc(0, 2, 10, 3.0);
  f.add_arc(1, 3, 10, 0.0);
  f.add_arc(2, 3, 10, 0.0);
  const auto r = f.solve(0, 3, 8);
  EXPECT_DOUBLE_EQ(r.flow, 8);
  EXPECT_DOUBLE_EQ(r.cost, 5 * 1.0 + 3 * 3.0);
  EXPECT_DOUBLE_EQ(f.flow(cheap), 5);
  EXPECT_DOUBLE_EQ(f.flow(dear), 3);
}

TEST(MinCostFlow, ReportsShortfall) {
  MinCostFlow f(3);
  f.add_arc(0, 1, 2, 0.0);
  f.add_arc(1, 2, 1, 0.0);
  EXPECT_DOUBLE_EQ(f.solve(0, 2, 5).flow, 1);
  EXPECT_THROW(f.add_arc(0, 7, 1, 0), std::out_of_range);
}

// Random transportation problems against the LP solver.
TEST(MinCostFlowProperty, MatchesLinearProgram) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t s = 1 + rng() % 4, t = 1 + rng() % 4;
    std::vector<double> supply(s), cap(t);
    std::vector<std::vector<double>> cost(s, std::vector<double>(t));
    double total = 0, room = 0;
    for (auto& v : supply) total += v = 1 + 9 * u(rng);
    for (auto& v : cap) room += v = 1 + 9 * u(rng);
    for (auto& row : cost) {
      for (auto& c : row) c = 5 * u(rng);
    }
    MinCostFlow f(2 + s + t);
    lp::DualSimplex lp;
    std::vector<std::vector<int>> col(s, std::vector<int>(t));
    for (std::size_t i = 0; i < s; ++i) {
      f.add_arc(0, 2 + i, supply[i], 0.0);
      for (std::size_t j = 0; j < t; ++j) {
        f.add_arc(2 + i, 2 + s + j, supply[i], cost[i][j]);
        col[i][j] = lp.add_column(cost[i][j], 0.0, supply[i]);
      }
    }
    for (std::size_t j = 0; j < t; ++j) f.add_arc(2 + s + j, 1, cap[j], 0.0);
    const auto r = f.solve(0, 1, total);
    for (std::size_t i = 0; i < s; ++i) {
      std::vector<lp::Term> terms;
      for (std::size_t j = 0; j < t; ++j) terms.push_back({col[i][j], 1.0});
      lp.add_row(terms, lp::RowSense::Equal, supply[i]);
    }
    for (std::size_t j = 0; j < t; ++j) {
      std::vector<lp::Term> terms;
      for (std::size_t i = 0; i < s; ++i) terms.push_back({col[i][j], 1.0});
      lp.add_row(terms, lp::RowSense::LessEqual, cap[j]);
    }
    const auto status = lp.solve();
    if (room < total - 1e-9) {
      EXPECT_LT(r.flow, total - 1e-9);
      EXPECT_EQ(status, lp::Status::Infeasible);
      continue;
    }
    ASSERT_EQ(status, lp::Status::Optimal);
    EXPECT_NEAR(r.flow, total, 1e-9);
    EXPECT_NEAR(r.cost, lp.objective(), 1e-6 * (1 + r.cost));
  }
}

TEST(AllocateShares, FillsCheapHostsFirstAndKeepsMinimumShares) {
  const Topology t = Topology::build(1, 2, 1);
  const auto c = ProfileCatalog::defaults();
  const DemandSet ds = make_demand_set(t, 1, 5);
  const NodeId iot = t.iot_devices()[0];
  const Activations hosts{{t.cloud_server(), iot, t.access_fog_of_site(0)}};
  const auto p = allocate_shares(t, c, ds, hosts, 1.0);
  ASSERT_TRUE(p);
  ASSERT_EQ(p->by_demand[0].size(), 3u);
  // Sorted by host id: IoT, AccessFog, cloud.
  EXPECT_EQ(p->by_demand[0][0].host, iot);
  EXPECT_DOUBLE_EQ(p->by_demand[0][0].mips, 1000);
  EXPECT_DOUBLE_EQ(p->by_demand[0][1].mips, 2400);
  EXPECT_DOUBLE_EQ(p->by_demand[0][2].mips, 1600);
}

TEST(AllocateShares, MinimumShareOnAnExpensiveHost) {
  const Topology t = Topology::build(1, 1, 1);
  const auto c = ProfileCatalog::defaults();
  const DemandSet ds = make_demand_set(t, 1, 0.5);
  const auto p = allocate_shares(t, c, ds, {{t.iot_devices()[0], t.cloud_server()}}, 1.0);
  ASSERT_TRUE(p);
  EXPECT_DOUBLE_EQ(p->by_demand[0][0].mips, 499);
  EXPECT_DOUBLE_EQ(p->by_demand[0][1].mips, 1);
}

TEST(AllocateShares, RejectsHostSetsThatCannotAbsorbTheDemand) {
  const Topology t = Topology::build(1, 2, 1);
  const auto c = ProfileCatalog::defaults();
  const DemandSet ds = make_demand_set(t, 2, 3);
  EXPECT_FALSE(allocate_shares(t, c, ds, {{t.iot_devices()[0]}, {t.cloud_server()}}, 1.0));
  EXPECT_FALSE(allocate_shares(t, c, ds, {{}, {t.cloud_server()}}, 1.0));
  EXPECT_FALSE(allocate_shares(t, c, ds, {{t.metro_router()}, {t.cloud_server()}}, 1.0));
  const auto shared = allocate_shares(
      t, c, ds, {{t.access_fog_of_site(0), t.cloud_server()}, {t.access_fog_of_site(0), t.cloud_server()}},
      1.0);
  ASSERT_TRUE(shared);
  const double onu = shared->by_demand[0][0].mips + shared->by_demand[1][0].mips;
  EXPECT_NEAR(onu, 2400, 1e-9);
}

}  // namespace
}  // namespace fogsplit
