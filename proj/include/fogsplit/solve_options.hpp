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

#ifndef FOGSPLIT_SOLVE_OPTIONS_HPP
#define FOGSPLIT_SOLVE_OPTIONS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "fogsplit/candidates.hpp"

namespace fogsplit {

struct SolveOptions {
  std::size_t max_splits = 1;  // K
  CandidatePolicy policy = CandidatePolicy::Peers;
  double min_allocation = 1.0;  // MIPS, smallest positive share
  std::uint64_t node_budget = 5'000'000;
  double time_budget_s = 0.0;  // 0 disables the wall-clock guard
  double rel_gap = 1e-9;        // prune nodes within this relative gap of the incumbent
  bool symmetry_breaking = true;
};

/// Solver failures: infeasible instances and rejected preconditions.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleSizeError : public SolverError {
 public:
  using SolverError::SolverError;
};

inline void validate(const SolveOptions& o) {
  if (o.max_splits < 1) throw std::invalid_argument("K must be >= 1");
  if (!(o.min_allocation > 0.0)) throw std::invalid_argument("min_allocation must be > 0");
  if (o.time_budget_s < 0.0) throw std::invalid_argument("time budget must be >= 0");
  if (!(o.rel_gap >= 0.0 && o.rel_gap < 1.0)) throw std::invalid_argument("rel_gap must be in [0, 1)");
}

}  // namespace fogsplit

#endif  // FOGSPLIT_SOLVE_OPTIONS_HPP
