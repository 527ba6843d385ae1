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

#include "qpmapf/master/lagrangian.hpp"

#include <optional>
#include <vector>

namespace qpmapf {

enum class PricingMode : std::uint8_t { PerAgent, GlobalArgmin };

// Slack below which delta_a counts as strictly under the gap.
inline constexpr double kCriterionTolerance = 1e-9;

struct PricingOutcome {
    double lagrangian = 0.0;
    double gap = 0.0; // incumbent - lagrangian; +inf without an incumbent
    // Per agent: reduced cost of the cheapest unpooled path minus the pool
    // minimum. +inf once the agent's path space is exhausted.
    std::vector<double> delta;
    std::vector<std::optional<TimedPath>> priced;
    bool fired = false;
    std::vector<AgentId> added;
};

// Prices every agent under the current duals of `rows`. The criterion fires
// iff some delta_a < incumbent - L(lambda); exact ties do not fire. When it
// fires, PerAgent adds the priced path of every agent under the gap and
// GlobalArgmin only the smallest-delta one (lowest agent id on ties).
// Agents are priced in parallel; the result does not depend on scheduling.
//
// A positive `granularity` declares every objective value a multiple of it
// (1 for unit weights). A new path can then only help if it leads to a
// solution at most incumbent - granularity, so the test becomes
// delta_a <= gap - granularity.
PricingOutcome pricing_round(const ProblemInstance& instance, PathPool& pool, const ConstraintPool& rows,
                             double incumbent, PricingMode mode, double granularity = 0.0);

// Rows for the conflicts of the selected paths that are not active yet; the
// new rows get zero duals. Empty iff the selection is conflict-free or every
// conflict already has its row.
std::vector<ConstraintRow> separate(const RmpSolution& solution, const PathPool& pool, ConstraintPool& rows,
                                    int horizon);

} // namespace qpmapf
