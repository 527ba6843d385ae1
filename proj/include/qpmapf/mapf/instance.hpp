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

#include "qpmapf/mapf/grid.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qpmapf {

using AgentId = std::int32_t;

struct Agent {
    AgentId id = 0;
    CellId origin = kNoCell;
    CellId destination = kNoCell;
    int start_time = 0;
};

class InstanceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Time steps run over [0, horizon): the time-expanded graph has `horizon`
// layers and every path must have arrived by horizon - 1.
struct ProblemInstance {
    GridMap map;
    std::vector<Agent> agents;
    int horizon = 0;

    int num_agents() const { return static_cast<int>(agents.size()); }
    // Throws InstanceError on blocked endpoints, bad ids or start times.
    void validate() const;
};

struct TimedVertex {
    CellId cell = kNoCell;
    int time = 0;
    friend bool operator==(const TimedVertex&, const TimedVertex&) = default;
};

// Traversal from `from` at `time` to `to` at `time + 1`.
struct TimedEdge {
    CellId from = kNoCell;
    CellId to = kNoCell;
    int time = 0;
    TimedEdge reverse() const { return {to, from, time}; }
    friend bool operator==(const TimedEdge&, const TimedEdge&) = default;
};

// Layered view over a grid: vertices (cell, t) for t in [0, horizon), edges
// from layer t to t + 1 for the five moves. Acyclic because time increases.
class TimeExpandedGraph {
  public:
    TimeExpandedGraph(const GridMap& map, int horizon) : map_(&map), horizon_(horizon) {}

    const GridMap& map() const { return *map_; }
    int horizon() const { return horizon_; }
    std::int64_t vertex_count() const { return static_cast<std::int64_t>(horizon_) * map_->passable_count(); }
    bool contains(TimedVertex v) const
    {
        return v.time >= 0 && v.time < horizon_ && v.cell >= 0 && v.cell < map_->size() && map_->passable(v.cell);
    }

    template <typename F>
    void for_each_successor(TimedVertex v, F&& f) const
    {
        if (v.time + 1 >= horizon_)
            return;
        const CellId* m = map_->moves(v.cell);
        for (int k = 0; k < kNumMoves; ++k)
            if (m[k] != kNoCell)
                f(TimedVertex{m[k], v.time + 1});
    }

  private:
    const GridMap* map_;
    int horizon_;
};

// Longest single-agent shortest distance, ignoring other agents; -1 if some
// agent cannot reach its destination at all.
int max_shortest_distance(const ProblemInstance& instance);

// Horizon policies count moves and add one, because the horizon counts
// layers. The floor allows max single-agent shortest path + |A| moves.
int horizon_floor(const ProblemInstance& instance);

// L + ceil(L / 2) moves for the longest initial path L, never below the floor.
int default_horizon(const ProblemInstance& instance, int longest_initial_path);

} // namespace qpmapf
