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

#include "qpmapf/mapf/instance.hpp"

#include "qpmapf/mapf/path.hpp"

#include <algorithm>

namespace qpmapf {

void ProblemInstance::validate() const
{
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const Agent& a = agents[i];
        if (a.id != static_cast<AgentId>(i))
            throw InstanceError("agent ids must be 0..k-1 in order");
        if (a.origin < 0 || a.origin >= map.size() || !map.passable(a.origin))
            throw InstanceError("agent " + std::to_string(i) + " has a blocked or out-of-map origin");
        if (a.destination < 0 || a.destination >= map.size() || !map.passable(a.destination))
            throw InstanceError("agent " + std::to_string(i) + " has a blocked or out-of-map destination");
        if (a.start_time < 0 || (horizon > 0 && a.start_time >= horizon))
            throw InstanceError("agent " + std::to_string(i) + " starts outside the horizon");
    }
}

int max_shortest_distance(const ProblemInstance& instance)
{
    int longest = 0;
    for (const Agent& a : instance.agents) {
        const int d = instance.map.distances_from(a.origin)[static_cast<std::size_t>(a.destination)];
        if (d < 0)
            return -1;
        longest = std::max(longest, d);
    }
    return longest;
}

int horizon_floor(const ProblemInstance& instance)
{
    const int longest = std::max(0, max_shortest_distance(instance));
    return longest + instance.num_agents() + 1;
}

int default_horizon(const ProblemInstance& instance, int longest_initial_path)
{
    const int moves = longest_initial_path + (longest_initial_path + 1) / 2;
    return std::max(moves + 1, horizon_floor(instance));
}

double path_cost(const GridMap& map, const TimedPath& path)
{
    if (path.steps.empty())
        throw StructuralError("path has no steps");
    for (CellId c : path.steps)
        if (c < 0 || c >= map.size() || !map.passable(c))
            throw StructuralError("path visits a blocked or out-of-map cell");
    std::size_t end = path.steps.size();
    while (end > 1 && path.steps[end - 2] == path.steps[end - 1])
        --end;
    double cost = 0.0;
    for (std::size_t k = 0; k + 1 < path.steps.size(); ++k) {
        if (!map.adjacent_or_same(path.steps[k], path.steps[k + 1]))
            throw StructuralError("path step " + std::to_string(k) + " -> " + std::to_string(k + 1) +
                                  " is not a move or wait");
        if (k + 1 < end)
            cost += map.move_weight(path.steps[k], path.steps[k + 1]);
    }
    return cost;
}

void trim_terminal_waits(std::vector<CellId>& steps)
{
    while (steps.size() > 1 && steps[steps.size() - 2] == steps.back())
        steps.pop_back();
}

TimedPath make_path(const GridMap& map, AgentId agent, int start_time, std::vector<CellId> steps)
{
    TimedPath p{agent, start_time, std::move(steps), 0.0};
    trim_terminal_waits(p.steps);
    p.cost = path_cost(map, p);
    return p;
}

} // namespace qpmapf
