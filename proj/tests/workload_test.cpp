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

#include "fogsplit/workload.hpp"

#include <gtest/gtest.h>

#include <array>
#include <stdexcept>

namespace fogsplit {
namespace {

TEST(Workload, CpuFromTraffic) {
  EXPECT_DOUBLE_EQ(cpu_from_traffic(5), 5000);
  EXPECT_DOUBLE_EQ(cpu_from_traffic(10), 10000);
  EXPECT_DOUBLE_EQ(cpu_from_traffic(0), 0);
  EXPECT_DOUBLE_EQ(cpu_from_traffic(2, 500), 1000);
  EXPECT_THROW(cpu_from_traffic(-1), std::invalid_argument);
  EXPECT_THROW(cpu_from_traffic(1, 0), std::invalid_argument);
}

TEST(Workload, ScenarioOneSourcesAreTheFirstSite) {
  const Topology t = Topology::build(4, 5, 4);
  const DemandSet s = make_demand_set(t, 5, 5);
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s.active_iot_count, 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(s.demands[i].id, i);
    EXPECT_EQ(t.node(s.demands[i].source).site, 0);
    EXPECT_DOUBLE_EQ(s.demands[i].cpu_mips, 5000);
    EXPECT_DOUBLE_EQ(s.demands[i].traffic_gbps, 0.005);
  }
}

TEST(Workload, ScenarioTwoIsHomogeneousOverAllDevices) {
  const Topology t = Topology::build(4, 5, 4);
  const DemandSet s = make_demand_set(t, 20, 5);
  ASSERT_EQ(s.size(), 20u);
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_EQ(s.demands[i].source, t.iot_devices()[i]);
    EXPECT_DOUBLE_EQ(s.demands[i].cpu_mips, s.demands[0].cpu_mips);
  }
}

TEST(Workload, SmallestScenario) {
  const Topology t = Topology::build(4, 5, 4);
  const DemandSet s = make_demand_set(t, 1, 1);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_DOUBLE_EQ(s.demands[0].cpu_mips, 1000);
}

TEST(Workload, RejectsOverflowAndBadSources) {
  const Topology t = Topology::build(4, 5, 4);
  EXPECT_THROW(make_demand_set(t, 21, 5), std::invalid_argument);
  const std::array<NodeId, 1> onu{t.access_fog_of_site(0)};
  EXPECT_THROW(make_demand_set(t, onu, 5), std::invalid_argument);
  const std::array<NodeId, 2> dup{t.iot_devices()[0], t.iot_devices()[0]};
  EXPECT_THROW(make_demand_set(t, dup, 5), std::invalid_argument);
}

TEST(Workload, ValidateDemand) {
  const Topology t = Topology::build(1, 2, 1);
  const auto c = ProfileCatalog::defaults();
  EXPECT_NO_THROW(validate_demand(t, c, make_demand(0, t.iot_devices()[0], 5)));
  EXPECT_NO_THROW(validate_demand(t, c, make_demand(0, t.iot_devices()[0], 54)));
  EXPECT_THROW(validate_demand(t, c, make_demand(0, t.iot_devices()[0], 55)),
               std::invalid_argument);
  EXPECT_THROW(validate_demand(t, c, make_demand(0, t.iot_devices()[0], 0)),
               std::invalid_argument);
  EXPECT_THROW(validate_demand(t, c, make_demand(0, t.edge_fog(), 1)), std::invalid_argument);
}

}  // namespace
}  // namespace fogsplit
