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

#include "qpmapf/search/overlay.hpp"

#include <optional>
#include <span>

namespace qpmapf {

// Ties between equal-cost paths are broken by (length, move sequence),
// where moves compare as wait < N < E < S < W at the first time the two
// paths diverge.
//
// Returns the minimum overlay-cost path of `agent` inside the time-expanded
// graph, or nullopt if the destination cannot be reached (and held) before
// the horizon. Manhattan distance is the heuristic; it stays admissible
// because surcharges are non-negative.
std::optional<TimedPath> astar_shortest(const TimeExpandedGraph& graph, const Agent& agent,
                                        const WeightOverlay& weights);

// Move taken from `from` to `to`; both must be equal or four-adjacent.
Move move_between(const GridMap& map, CellId from, CellId to);

// Negative if `a` precedes `b` in move order at their first divergence,
// zero if equal, positive otherwise. Both sequences start at the same cell.
int compare_move_sequences(const GridMap& map, std::span<const CellId> a, std::span<const CellId> b);

} // namespace qpmapf
