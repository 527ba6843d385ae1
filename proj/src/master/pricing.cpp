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

#include "qpmapf/master/pricing.hpp"

#include "qpmapf/search/k_shortest.hpp"
#include "qpmapf/util/parallel.hpp"

#include <limits>

namespace qpmapf {

PricingOutcome pricing_round(const ProblemInstance& instance, PathPool& pool, const ConstraintPool& rows,
                             double incumbent, PricingMode mode, double granularity)
{
    const int horizon = instance.horizon;
    const auto n = static_cast<std::size_t>(instance.num_agents());
    const LagrangianValue lv = lagrangian_value(pool, rows, horizon);
    const WeightOverlay weights = dual_overlay(rows, instance.map.size(), horizon);
    const TimeExpandedGraph graph(instance.map, horizon);

    PricingOutcome out;
    out.lagrangian = lv.value;
    out.gap = incumbent - lv.value;
    out.delta.assign(n, std::numeric_limits<double>::infinity());
    out.priced.resize(n);

    parallel_for(n, [&](std::size_t a) {
        const Agent& agent = instance.agents[a];
        auto p = next_cheapest_path(graph, agent, weights, pool.paths(agent.id));
        if (!p)
            return;
        out.delta[a] = overlay_cost(instance.map, *p, weights, horizon) - lv.minimum[a];
        out.priced[a] = std::move(p);
    });

    const double threshold =
        granularity > 0.0 ? out.gap - granularity + kCriterionTolerance : out.gap - kCriterionTolerance;
    AgentId argmin = -1;
    for (std::size_t a = 0; a < n; ++a) {
        if (!(out.delta[a] < threshold))
            continue;
        out.fired = true;
        if (argmin < 0 || out.delta[a] < out.delta[static_cast<std::size_t>(argmin)])
            argmin = static_cast<AgentId>(a);
    }
    if (!out.fired)
        return out;

    for (std::size_t a = 0; a < n; ++a) {
        const bool take = mode == PricingMode::PerAgent ? out.delta[a] < threshold
                                                        : static_cast<AgentId>(a) == argmin;
        if (take && pool.add(*out.priced[a]))
            out.added.push_back(static_cast<AgentId>(a));
    }
    return out;
}

std::vector<ConstraintRow> separate(const RmpSolution& solution, const PathPool& pool, ConstraintPool& rows,
                                    int horizon)
{
    std::vector<ConstraintRow> added;
    const std::vector<TimedPath> chosen = solution.paths(pool);
    for (const Conflict& c : find_conflicts(chosen, horizon)) {
        const ConstraintRow row = ConstraintRow::from_conflict(c);
        if (rows.add(row))
            added.push_back(row);
    }
    return added;
}

} // namespace qpmapf
