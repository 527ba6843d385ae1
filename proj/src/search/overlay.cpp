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

#include "qpmapf/search/overlay.hpp"

#include <stdexcept>

namespace qpmapf {

WeightOverlay::WeightOverlay(int num_cells, int horizon) : cells_(num_cells), horizon_(horizon)
{
    const std::size_t n = static_cast<std::size_t>(num_cells) * static_cast<std::size_t>(horizon);
    vertex_mark_.assign((n + 63) / 64, 0);
    edge_mark_.assign((n + 63) / 64, 0);
}

void WeightOverlay::mark(std::vector<std::uint64_t>& bits, CellId cell, int time)
{
    if (time < 0 || time >= horizon_ || cell < 0 || cell >= cells_)
        throw std::out_of_range("overlay entry outside the time-expanded graph");
    const std::size_t i = static_cast<std::size_t>(time) * static_cast<std::size_t>(cells_) + static_cast<std::size_t>(cell);
    bits[i >> 6] |= std::uint64_t{1} << (i & 63);
}

void WeightOverlay::add_vertex(CellId cell, int time, double surcharge)
{
    if (!(surcharge >= 0.0))
        throw std::invalid_argument("overlay surcharges must be non-negative");
    if (surcharge == 0.0)
        return;
    mark(vertex_mark_, cell, time);
    vertex_[vertex_key(cell, time)] += surcharge;
}

void WeightOverlay::add_edge(CellId u, CellId v, int time, double surcharge)
{
    if (!(surcharge >= 0.0))
        throw std::invalid_argument("overlay surcharges must be non-negative");
    if (surcharge == 0.0 || u == v)
        return;
    mark(edge_mark_, u, time);
    mark(edge_mark_, v, time);
    edge_[edge_key(u, v, time)] += surcharge;
}

std::vector<double> WeightOverlay::parking_costs(CellId cell, int horizon) const
{
    std::vector<double> cost(static_cast<std::size_t>(horizon), 0.0);
    for (int t = horizon - 2; t >= 0; --t)
        cost[static_cast<std::size_t>(t)] = cost[static_cast<std::size_t>(t) + 1] + vertex(cell, t + 1);
    return cost;
}

double overlay_cost(const GridMap& map, const TimedPath& path, const WeightOverlay& overlay, int horizon)
{
    double cost = overlay.vertex(path.steps.front(), path.start_time);
    for (std::size_t k = 0; k + 1 < path.steps.size(); ++k)
        cost += overlay.step_cost(map, path.steps[k], path.steps[k + 1], path.start_time + static_cast<int>(k));
    const int arrival = path.arrival_time();
    if (arrival < horizon)
        cost += overlay.parking_costs(path.steps.back(), horizon)[static_cast<std::size_t>(arrival)];
    return cost;
}

} // namespace qpmapf
