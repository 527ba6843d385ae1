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

#include "qpmapf/search/prioritized.hpp"

#include "qpmapf/search/astar.hpp"

#include <numeric>
#include <random>

namespace qpmapf {

std::vector<AgentId> ppp_order(int num_agents, std::uint64_t seed)
{
    std::vector<AgentId> order(static_cast<std::size_t>(num_agents));
    std::iota(order.begin(), order.end(), 0);
    // Explicit Fisher-Yates: std::shuffle differs between standard libraries.
    std::mt19937_64 rng(seed);
    for (std::size_t i = order.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(order[i - 1], order[j]);
    }
    return order;
}

std::optional<std::vector<TimedPath>> ppp_initialize(const ProblemInstance& instance, std::uint64_t seed)
{
    const TimeExpandedGraph graph(instance.map, instance.horizon);
    WeightOverlay reserved(instance.map.size(), instance.horizon);
    std::vector<TimedPath> paths(instance.agents.size());

    for (AgentId a : ppp_order(instance.num_agents(), seed)) {
        auto path = astar_shortest(graph, instance.agents[static_cast<std::size_t>(a)], reserved);
        if (!path)
            return std::nullopt;
        for_each_occupied(*path, instance.horizon, [&](CellId c, int t) { reserved.block_vertex(c, t); });
        for_each_traversal(*path, [&](CellId from, CellId to, int t) { reserved.block_edge(from, to, t); });
        paths[static_cast<std::size_t>(a)] = std::move(*path);
    }
    return paths;
}

} // namespace qpmapf
