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


// fogsplit command-line tool: sweeps scenario configs and validates them.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fogsplit/config.hpp"
#include "fogsplit/csv.hpp"
#include "fogsplit/manifest.hpp"

namespace fs = std::filesystem;
using namespace fogsplit;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kConfig = 2, kSolver = 3, kOutput = 4 };

struct SolveArgs {
  std::string config;
  std::string solver;
  std::string k;
  std::string traffic;
  std::string policy;
  std::size_t core_hops = 0;
  std::uint64_t node_budget = 0;
  std::string out;
  bool dump_placement = false;
  bool validate = false;
  bool timing = false;
  bool require_optimal = false;
  bool quiet = false;
};

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

void apply_overrides(const SolveArgs& a, ScenarioConfig& c) {
  try {
    if (!a.solver.empty()) c.solver = solver_kind_from_string(a.solver);
    if (!a.policy.empty()) c.options.policy = candidate_policy_from_string(a.policy);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!a.k.empty()) c.k_values = parse_k_range(a.k, "--k");
  if (!a.traffic.empty()) c.traffic_mbps = parse_range(a.traffic, "--traffic");
  if (a.core_hops > 0) c.core_hops = a.core_hops;
  if (a.node_budget > 0) c.options.node_budget = a.node_budget;
  if (!a.out.empty()) c.output = a.out;
  if (a.timing) c.timing = true;
}

// Re-derives every reported number from the placement alone.
void post_check(const Topology& topology, const ScenarioConfig& c, const SweepCell& cell) {
  const double mbps = cell.row.traffic_gbps * 1000.0;
  const DemandSet demands = build_demands(c, topology, mbps);
  const SolveResult again = evaluate(topology, c.catalog, demands, cell.placement);
  check_split_limits(cell.placement, cell.row.k, c.options.min_allocation);
  if (again.total_w != cell.row.total_w) {
    throw SolverError("post-check: re-evaluated total differs at K=" + std::to_string(cell.row.k));
  }
}

void dump(const Topology& topology, const SweepCell& cell, std::ostream& os) {
  os << "# traffic_gbps=" << csv::format_number(cell.row.traffic_gbps) << " K=" << cell.row.k
     << " total_w=" << csv::format_number(cell.row.total_w) << '\n';
  for (std::size_t d = 0; d < cell.placement.by_demand.size(); ++d) {
    double sum = 0.0;
    os << "demand " << d << ':';
    for (const Allocation& a : cell.placement.by_demand[d]) {
      os << ' ' << to_string(topology.node(a.host).kind) << '#' << a.host << '='
         << csv::format_number(a.mips);
      sum += a.mips;
    }
    os << " sum=" << csv::format_number(sum) << '\n';
  }
}

int cmd_solve(const SolveArgs& a) {
  const auto started = std::chrono::system_clock::now();
  LoadedConfig loaded = load_config(a.config);
  ScenarioConfig& c = loaded.config;
  apply_overrides(a, c);
  print_warnings(check_config(c));

  const Topology topology = build_topology(c);
  std::vector<ResultRow> rows;
  std::size_t non_optimal = 0;
  std::ostringstream placements;
  run_sweep(c, [&](const SweepCell& cell) {
    if (a.validate) post_check(topology, c, cell);
    if (a.dump_placement) dump(topology, cell, placements);
    if (!cell.row.optimal) ++non_optimal;
    rows.push_back(cell.row);
    if (!a.quiet) {
      std::cerr << c.name << ": " << csv::format_number(cell.row.traffic_gbps * 1000.0)
                << " Mbps K=" << cell.row.k << " total " << csv::format_number(cell.row.total_w)
                << " W" << (cell.row.optimal ? "" : " (budget exhausted, not proven optimal)")
                << '\n';
    }
  });

  std::ostringstream body;
  csv::write(body, rows);
  if (c.output.empty() || c.output == "-") {
    std::cout << body.str();
  } else {
    const fs::path out(c.output);
    std::error_code ec;
    if (out.has_parent_path()) fs::create_directories(out.parent_path(), ec);
    std::ofstream file(out, std::ios::binary);
    file << body.str();
    if (!file) {
      std::cerr << "error: cannot write " << out.string() << '\n';
      return kOutput;
    }
    RunManifest m;
    m.config_path = a.config;
    m.config_checksum = fnv1a_hex(loaded.text);
    m.settings = effective_settings(c);
    m.started_at = utc_timestamp(started);
    m.finished_at = utc_timestamp(std::chrono::system_clock::now());
    m.rows = rows.size();
    m.non_optimal_rows = non_optimal;
    std::ofstream mf(out.string() + ".manifest.json", std::ios::binary);
    mf << to_json(m).dump(2) << '\n';
    if (!mf) {
      std::cerr << "error: cannot write the manifest next to " << out.string() << '\n';
      return kOutput;
    }
  }
  if (a.dump_placement) std::cout << placements.str();
  if (non_optimal > 0) {
    if (c.solver == SolverKind::Exact) {
      std::cerr << "warning: " << non_optimal << " of " << rows.size()
                << " rows hit the solver budget and are flagged optimal=0\n";
    }
    if (a.require_optimal) return kSolver;
  }
  return kOk;
}

int cmd_validate(const std::string& path) {
  const LoadedConfig loaded = load_config(path);
  print_warnings(check_config(loaded.config));
  const ProfileCatalog& catalog = loaded.config.catalog;
  std::printf("%-17s %-4s %9s %9s %10s %5s %-9s %12s\n", "device", "sub", "max_w", "idle_w",
              "capacity", "pue", "sharing", "efficiency");
  for (std::size_t k = 0; k < kNodeKindCount; ++k) {
    const DeviceProfile& p = catalog.at(static_cast<NodeKind>(k));
    auto row = [&](const SubsystemProfile& s, const char* sub, const char* unit) {
      std::printf("%-17s %-4s %9.6g %9.6g %10.6g %5.3g %-9s %8.4g %s\n",
                  std::string(to_string(p.kind)).c_str(), sub, s.max_w, s.idle_w, s.capacity,
                  s.pue, std::string(to_string(s.sharing)).c_str(), proportional_slope(s), unit);
    };
    if (p.network) row(*p.network, "net", "W/Gbps");
    if (p.processing) row(*p.processing, "cpu", "W/MIPS");
  }
  std::printf("cloud path network slope (%zu core hops): %.6g W/Gbps\n",
              loaded.config.core_hops, cloud_path_network_slope(catalog, loaded.config.core_hops));
  std::printf("config OK: %s (fnv1a64 %s)\n", path.c_str(), fnv1a_hex(loaded.text).c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-aware IoT/fog/cloud workload placement"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* s = app.add_subcommand("solve", "Run the configured sweep and write results");
  s->add_option("--config", solve.config, "Scenario config file")->required();
  s->add_option("--solver", solve.solver, "exact, greedy or oracle")
      ->check(CLI::IsMember({"exact", "greedy", "oracle"}));
  s->add_option("--k", solve.k, "Split limits, e.g. 1..6 or 1,2,4");
  s->add_option("--traffic", solve.traffic, "Traffic per IoT in Mbps, e.g. 1..10 or 2..4:0.5");
  s->add_option("--candidate-policy", solve.policy, "peers, site-peers or hierarchy")
      ->check(CLI::IsMember({"peers", "site-peers", "hierarchy"}));
  s->add_option("--core-hops", solve.core_hops, "Core nodes between metro and cloud")
      ->check(CLI::PositiveNumber);
  s->add_option("--node-budget", solve.node_budget, "Branch-and-bound node budget per cell")
      ->check(CLI::PositiveNumber);
  s->add_option("--out", solve.out, "Results CSV path ('-' for stdout)");
  s->add_flag("--dump-placement", solve.dump_placement, "Print per-demand allocations");
  s->add_flag("--validate", solve.validate, "Re-evaluate every placement before writing");
  s->add_flag("--timing", solve.timing, "Record wall_ms (makes output machine dependent)");
  s->add_flag("--require-optimal", solve.require_optimal,
              "Exit with the solver code when a cell is not proven optimal");
  s->add_flag("--quiet", solve.quiet, "No per-cell progress on stderr");

  std::string validate_path;
  CLI::App* v = app.add_subcommand("validate", "Check a config and print device efficiencies");
  v->add_option("--config", validate_path, "Scenario config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*s) return cmd_solve(solve);
    return cmd_validate(validate_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const InfeasiblePlacement& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolver;
  }
}
