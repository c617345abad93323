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

#ifndef FOGSPLIT_BASELINE_HPP
#define FOGSPLIT_BASELINE_HPP

#include "fogsplit/placement.hpp"
#include "fogsplit/solve_options.hpp"

namespace fogsplit {

/// Every demand processed entirely by the cloud pool.
inline SolveResult baseline_cloud(const Topology& topology, const ProfileCatalog& catalog,
                                  const DemandSet& demands) {
  Placement p;
  for (const Demand& d : demands.demands) {
    p.by_demand.push_back({{topology.cloud_server(), d.cpu_mips}});
  }
  try {
    SolveResult r = evaluate(topology, catalog, demands, p);
    r.stats.solver = "baseline";
    return r;
  } catch (const InfeasiblePlacement& e) {
    throw SolverError(std::string("all-cloud baseline infeasible: ") + e.what());
  }
}

}  // namespace fogsplit

#endif  // FOGSPLIT_BASELINE_HPP
