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
#include <limits>
#include <unordered_map>
#include <vector>

namespace qpmapf {

inline constexpr double kBlocked = std::numeric_limits<double>::infinity();

// Additive, non-negative surcharges on top of the unit grid weights. A vertex
// surcharge applies to every edge entering that timed vertex; an edge
// surcharge applies to the timed edge in both directions. kBlocked removes
// the vertex or edge entirely.
class WeightOverlay {
  public:
    WeightOverlay() = default;
    WeightOverlay(int num_cells, int horizon);

    int horizon() const { return horizon_; }
    bool empty() const { return vertex_.empty() && edge_.empty(); }

    void add_vertex(CellId cell, int time, double surcharge);
    void add_edge(CellId u, CellId v, int time, double surcharge);
    void block_vertex(CellId cell, int time) { add_vertex(cell, time, kBlocked); }
    void block_edge(CellId u, CellId v, int time) { add_edge(u, v, time, kBlocked); }

    double vertex(CellId cell, int time) const
    {
        if (!marked(vertex_mark_, cell, time))
            return 0.0;
        const auto it = vertex_.find(vertex_key(cell, time));
        return it == vertex_.end() ? 0.0 : it->second;
    }
    double edge(CellId u, CellId v, int time) const
    {
        if (u == v || !marked(edge_mark_, u, time))
            return 0.0;
        const auto it = edge_.find(edge_key(u, v, time));
        return it == edge_.end() ? 0.0 : it->second;
    }

    // Weight of the timed edge (u, t) -> (v, t + 1) including surcharges.
    double step_cost(const GridMap& map, CellId u, CellId v, int time) const
    {
        return map.move_weight(u, v) + edge(u, v, time) + vertex(v, time + 1);
    }

    // Surcharges collected by an agent parked at `cell` after arriving at
    // `arrival`, over (arrival, horizon). Entry k is for arrival = k.
    std::vector<double> parking_costs(CellId cell, int horizon) const;

  private:
    static std::uint64_t vertex_key(CellId cell, int time)
    {
        return (static_cast<std::uint64_t>(time) << 32) | static_cast<std::uint32_t>(cell);
    }
    static std::uint64_t edge_key(CellId u, CellId v, int time)
    {
        const auto lo = static_cast<std::uint64_t>(u < v ? u : v);
        const auto hi = static_cast<std::uint64_t>(u < v ? v : u);
        return (static_cast<std::uint64_t>(time) << 42) | (lo << 21) | hi;
    }
    bool marked(const std::vector<std::uint64_t>& bits, CellId cell, int time) const
    {
        if (bits.empty() || time < 0 || time >= horizon_)
            return false;
        const std::size_t i = static_cast<std::size_t>(time) * static_cast<std::size_t>(cells_) + static_cast<std::size_t>(cell);
        return (bits[i >> 6] >> (i & 63)) & 1U;
    }
    void mark(std::vector<std::uint64_t>& bits, CellId cell, int time);

    int cells_ = 0;
    int horizon_ = 0;
    std::unordered_map<std::uint64_t, double> vertex_;
    std::unordered_map<std::uint64_t, double> edge_;
    // One bit per timed vertex so misses skip the hash lookup.
    std::vector<std::uint64_t> vertex_mark_;
    std::vector<std::uint64_t> edge_mark_;
};

// Surcharged cost of a path: origin vertex, every step, then parking until
// the horizon. Equals the reduced cost when the overlay is built from duals.
double overlay_cost(const GridMap& map, const TimedPath& path, const WeightOverlay& overlay, int horizon);

} // namespace qpmapf
