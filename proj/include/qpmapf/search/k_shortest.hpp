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

#include "qpmapf/search/astar.hpp"

#include <optional>
#include <span>

namespace qpmapf {

// Cheapest path of `agent` under `weights` that is not in `exclude`, or
// nullopt once every path that fits in the horizon is excluded.
//
// Yen-style spur search: every prefix shared with an excluded path is a spur
// node, and the answer leaves the excluded prefix tree through an unused
// move (or stops at a spur node that no excluded path ends on). Completions
// from a spur come from one backward pass over the time-expanded graph, so a
// call costs O(horizon * cells + total excluded length). With an empty
// exclude set this is astar_shortest.
std::optional<TimedPath> next_cheapest_path(const TimeExpandedGraph& graph, const Agent& agent,
                                            const WeightOverlay& weights, std::span<const TimedPath> exclude);

} // namespace qpmapf
