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

#ifndef FOGSPLIT_OPTIMIZER_HPP
#define FOGSPLIT_OPTIMIZER_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "fogsplit/baseline.hpp"
#include "fogsplit/exact.hpp"
#include "fogsplit/greedy.hpp"
#include "fogsplit/oracle.hpp"
#include "fogsplit/placement.hpp"
#include "fogsplit/solve_options.hpp"

namespace fogsplit {

enum class SolverKind : std::uint8_t { Exact, Greedy, Oracle };

inline constexpr std::string_view to_string(SolverKind k) {
  switch (k) {
    case SolverKind::Exact: return "exact";
    case SolverKind::Greedy: return "greedy";
    case SolverKind::Oracle: return "oracle";
  }
  return "unknown";
}

inline SolverKind solver_kind_from_string(std::string_view s) {
  if (s == "exact") return SolverKind::Exact;
  if (s == "greedy") return SolverKind::Greedy;
  if (s == "oracle") return SolverKind::Oracle;
  throw std::invalid_argument("unknown solver '" + std::string(s) +
                              "' (expected exact, greedy or oracle)");
}

inline SolveResult solve(SolverKind kind, const Topology& topology, const ProfileCatalog& catalog,
                         const DemandSet& demands, const SolveOptions& options) {
  switch (kind) {
    case SolverKind::Exact: return solve_exact(topology, catalog, demands, options);
    case SolverKind::Greedy: return solve_greedy(topology, catalog, demands, options);
    case SolverKind::Oracle: return brute_force_oracle(topology, catalog, demands, options);
  }
  throw std::invalid_argument("unknown solver kind");
}

}  // namespace fogsplit

#endif  // FOGSPLIT_OPTIMIZER_HPP
