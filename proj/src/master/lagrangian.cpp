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

#include "qpmapf/master/lagrangian.hpp"

#include <algorithm>
#include <limits>

namespace qpmapf {

double reduced_cost(const TimedPath& path, const ConstraintPool& rows, int horizon)
{
    double c = path.cost;
    for (int i : rows_touched(path, rows, horizon))
        c += rows.dual(i);
    return c;
}

LagrangianValue lagrangian_value(const PathPool& pool, const Incidence& d, std::span<const double> lambda)
{
    LagrangianValue out;
    out.selection.assign(static_cast<std::size_t>(pool.num_agents()), -1);
    out.minimum.assign(static_cast<std::size_t>(pool.num_agents()), std::numeric_limits<double>::infinity());
    for (AgentId a = 0; a < pool.num_agents(); ++a) {
        for (int k = 0; k < pool.count(a); ++k) {
            double c = pool.path(a, k).cost;
            for (int i : d.rows_of[static_cast<std::size_t>(pool.column(a, k))])
                c += lambda[static_cast<std::size_t>(i)];
            if (c < out.minimum[static_cast<std::size_t>(a)]) {
                out.minimum[static_cast<std::size_t>(a)] = c;
                out.selection[static_cast<std::size_t>(a)] = k;
            }
        }
    }
    // Same quantity as sum(minimum) - sum(lambda), grouped as c'z + lambda'(Dz - 1)
    // so a feasible minimizer never rounds above its own cost.
    std::vector<int> hits(lambda.size(), 0);
    double cost = 0.0;
    for (AgentId a = 0; a < pool.num_agents(); ++a) {
        if (out.selection[static_cast<std::size_t>(a)] < 0) {
            out.value = std::numeric_limits<double>::infinity();
            return out;
        }
        const int col = pool.column(a, out.selection[static_cast<std::size_t>(a)]);
        cost += pool.at_column(col).cost;
        for (int i : d.rows_of[static_cast<std::size_t>(col)])
            ++hits[static_cast<std::size_t>(i)];
    }
    double slack = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        slack += lambda[i] * static_cast<double>(hits[i] - 1);
    out.value = cost + slack;
    return out;
}

LagrangianValue lagrangian_value(const PathPool& pool, const ConstraintPool& rows, int horizon)
{
    return lagrangian_value(pool, build_incidence(pool, rows, horizon), rows.duals());
}

DualAscentResult dual_ascent(const PathPool& pool, const Incidence& d, int num_rows, std::span<const double> warm,
                             const DualAscentParams& params)
{
    const auto m = static_cast<std::size_t>(num_rows);
    std::vector<double> lambda(m, 0.0);
    std::copy_n(warm.begin(), std::min(warm.size(), m), lambda.begin());

    DualAscentResult result;
    result.lambda.assign(m, 0.0);
    result.best = lagrangian_value(pool, d, result.lambda);
    if (m == 0)
        return result;

    std::vector<double> g(m);
    for (int k = 0;; ++k) {
        const LagrangianValue current = lagrangian_value(pool, d, lambda);
        if (current.value > result.best.value) {
            result.best = current;
            result.lambda = lambda;
        }
        if (k >= params.steps)
            break;

        std::fill(g.begin(), g.end(), -1.0);
        for (AgentId a = 0; a < pool.num_agents(); ++a)
            for (int i : d.rows_of[static_cast<std::size_t>(pool.column(a, current.selection[static_cast<std::size_t>(a)]))])
                g[static_cast<std::size_t>(i)] += 1.0;

        // Zero projected subgradient: lambda is a maximizer.
        bool stationary = true;
        for (std::size_t i = 0; i < m; ++i)
            if (g[i] > 0.0 || (g[i] < 0.0 && lambda[i] > 0.0))
                stationary = false;
        if (stationary)
            break;

        const double eta = params.eta0 / (1.0 + static_cast<double>(k) / params.decay);
        for (std::size_t i = 0; i < m; ++i)
            lambda[i] = std::max(0.0, lambda[i] + eta * g[i]);
    }
    return result;
}

WeightOverlay dual_overlay(const ConstraintPool& rows, int num_cells, int horizon)
{
    WeightOverlay w(num_cells, horizon);
    for (int i = 0; i < rows.size(); ++i) {
        const ConstraintRow& r = rows.row(i);
        if (r.kind == RowKind::Vertex)
            w.add_vertex(r.a, r.time, rows.dual(i));
        else
            w.add_edge(r.a, r.b, r.time, rows.dual(i));
    }
    return w;
}

} // namespace qpmapf
