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

#include "qpmapf/mapf/path.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qpmapf {

// Prioritized planning in a random agent order drawn from `seed`: each agent
// takes its shortest path after the timed vertices and edges of earlier
// agents (including their parking) are removed. Paths are indexed by agent
// id. nullopt if some agent finds no path.
std::optional<std::vector<TimedPath>> ppp_initialize(const ProblemInstance& instance, std::uint64_t seed);

// Agent order used by ppp_initialize for `seed`.
std::vector<AgentId> ppp_order(int num_agents, std::uint64_t seed);

} // namespace qpmapf
