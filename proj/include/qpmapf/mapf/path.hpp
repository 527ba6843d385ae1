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

#include "qpmapf/mapf/instance.hpp"

#include <vector>

namespace qpmapf {

// One cell per time step from start_time to arrival. Pools store paths in
// canonical form: no trailing waits at the destination, since an arrived
// agent stays on its destination anyway.
struct TimedPath {
    AgentId agent = 0;
    int start_time = 0;
    std::vector<CellId> steps;
    double cost = 0.0;

    int arrival_time() const { return start_time + static_cast<int>(steps.size()) - 1; }
    CellId origin() const { return steps.front(); }
    CellId destination() const { return steps.back(); }

    // Position at time t, holding the last cell after arrival; kNoCell
    // before the start.
    CellId at(int t) const
    {
        if (t < start_time)
            return kNoCell;
        const auto k = static_cast<std::size_t>(t - start_time);
        return k < steps.size() ? steps[k] : steps.back();
    }

    bool same_route(const TimedPath& other) const
    {
        return agent == other.agent && start_time == other.start_time && steps == other.steps;
    }
};

// Sum of edge weights; waits at the destination after the final arrival are
// free. Throws StructuralError if two consecutive steps are not adjacent.
double path_cost(const GridMap& map, const TimedPath& path);

void trim_terminal_waits(std::vector<CellId>& steps);

// Canonical path with its cost filled in.
TimedPath make_path(const GridMap& map, AgentId agent, int start_time, std::vector<CellId> steps);

// Every timed vertex the path occupies, including its destination from
// arrival until horizon - 1.
template <typename F>
void for_each_occupied(const TimedPath& path, int horizon, F&& f)
{
    int t = path.start_time;
    for (CellId c : path.steps) {
        if (t >= horizon)
            return;
        f(c, t++);
    }
    for (; t < horizon; ++t)
        f(path.steps.back(), t);
}

// Every non-wait move: (from, to, t) means from at t to `to` at t + 1.
template <typename F>
void for_each_traversal(const TimedPath& path, F&& f)
{
    for (std::size_t k = 0; k + 1 < path.steps.size(); ++k)
        if (path.steps[k] != path.steps[k + 1])
            f(path.steps[k], path.steps[k + 1], path.start_time + static_cast<int>(k));
}

} // namespace qpmapf
