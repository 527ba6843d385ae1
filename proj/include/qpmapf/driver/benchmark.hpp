// Copyright 2026 The qpmapf Authors
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

#pragma once

#include "qpmapf/driver/solver.hpp"
#include "qpmapf/io/movingai.hpp"

#include <string>
#include <vector>

namespace qpmapf {

struct NamedConfig {
    std::string name;
    SolverConfig config;
};

struct BenchmarkMap {
    std::string name;
    GridMap map;
    std::vector<std::vector<ScenarioEntry>> scenarios;
};

struct BenchmarkRun {
    std::string map;
    int scenario = 0;
    int agents = 0;
    std::string config;
    RunStatus status = RunStatus::Infeasible;
    double cost = kNoIncumbent;
    double gap = kNoIncumbent; // last logged gap bound
    double wall_time = 0.0;
    std::string error; // set when the run threw
};

struct BenchmarkRow {
    std::string map;
    int agents = 0;
    std::string config;
    int runs = 0;
    int solved = 0;    // runs with a conflict-free solution
    int certified = 0; // runs with status optimal-certified
    double mean_cost = 0.0;
    double sd_cost = 0.0;
    double mean_gap = 0.0;
    double sd_gap = 0.0;
};

struct BenchmarkResult {
    std::vector<BenchmarkRun> runs;
    std::vector<BenchmarkRow> rows;
};

// Every (map, scenario, agent count, config); a run that throws or ends
// infeasible is recorded and left out of the means. Standard deviations are
// population deviations over solved runs.
BenchmarkResult benchmark(const std::vector<BenchmarkMap>& maps, const std::vector<int>& agent_counts,
                          const std::vector<NamedConfig>& configs);

// Aggregate rows only; wall times are left out so reruns compare byte for byte.
std::string benchmark_csv(const BenchmarkResult& result);
std::string benchmark_runs_csv(const BenchmarkResult& result);

// JSON array of {name, algo, backend, formulation, max_pricing, time_limit,
// seed, samples, sweeps, pricing_mode, decompose, integral_stop}; missing keys
// keep defaults.
std::vector<NamedConfig> parse_configs(std::string_view json_text);

} // namespace qpmapf
