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

// Brute-force references used by the unit and acceptance tests. They share no
// code with the solver beyond the domain types.

#pragma once

#include "qpmapf/master/pool.hpp"
#include "qpmapf/mapf/conflict.hpp"
#include "qpmapf/qubo/qubo.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace qpmapf::testing {

// Every canonical path (no waits at the destination after the final arrival)
// of `agent` that arrives by horizon - 1, in DFS order. Capped at `limit`.
std::vector<TimedPath> enumerate_paths(const GridMap& map, const Agent& agent, int horizon,
                                       std::size_t limit = 2'000'000);

// Grid distance by BFS written independently of GridMap::distances_from.
int bfs_distance(const GridMap& map, CellId from, CellId to);

// Minimum sum of costs over all conflict-free joint plans by dynamic
// programming over joint positions; nullopt if none fits in the horizon.
std::optional<double> joint_optimum(const ProblemInstance& instance);

// Pairwise occupancy simulator: every (vertex, swap) collision, not sorted.
std::vector<Conflict> simulate_conflicts(const std::vector<TimedPath>& paths, int horizon);

// Minimum over all 2^n assignments by plain enumeration.
double brute_force_minimum(const QuboProblem& q);

// Random micro instance: map of at most 4 x 4 with obstacles, 2 or 3 agents
// with distinct starts and goals, horizon at most 8.
ProblemInstance random_micro_instance(std::mt19937_64& rng);

// Random path pool for `instance`: up to `per_agent` enumerated paths per
// agent, drawn without replacement.
PathPool random_pool(const ProblemInstance& instance, std::mt19937_64& rng, int per_agent);

} // namespace qpmapf::testing
