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

#include "qpmapf/qubo/formulations.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qpmapf {

double constraint_penalty(const PathPool& pool)
{
    double w = 1.0;
    for (AgentId a = 0; a < pool.num_agents(); ++a)
        if (pool.count(a) > 0)
            w += pool.max_cost(a) - pool.min_cost(a);
    return w;
}

std::vector<double> one_hot_penalties(const PathPool& pool)
{
    const double extra = constraint_penalty(pool);
    std::vector<double> w(static_cast<std::size_t>(pool.num_agents()));
    for (AgentId a = 0; a < pool.num_agents(); ++a)
        w[static_cast<std::size_t>(a)] = pool.count(a) > 0 ? pool.max_cost(a) + extra : extra;
    return w;
}

QuboProblem build_base_objective(const PathPool& pool) { return build_base_objective(pool, one_hot_penalties(pool)); }

QuboProblem build_base_objective(const PathPool& pool, const std::vector<double>& one_hot)
{
    QuboProblem q;
    for (AgentId a = 0; a < pool.num_agents(); ++a) {
        if (pool.count(a) == 0)
            throw QuboError("agent " + std::to_string(a) + " has no pooled path");
        for (int k = 0; k < pool.count(a); ++k)
            q.add_variable({QuboVariable::Kind::Path, a, k});
    }
    // (sum z - 1)^2 = sum z_i + 2 sum_{i<j} z_i z_j - 2 sum z_i + 1
    for (AgentId a = 0; a < pool.num_agents(); ++a) {
        const double w = one_hot[static_cast<std::size_t>(a)];
        for (int k = 0; k < pool.count(a); ++k) {
            const int i = pool.column(a, k);
            q.add(i, i, pool.path(a, k).cost - w);
            for (int l = k + 1; l < pool.count(a); ++l)
                q.add(i, pool.column(a, l), 2.0 * w);
        }
        q.add_offset(w);
    }
    return q;
}

namespace {

// Columns per row, ascending.
std::vector<std::vector<int>> columns_by_row(const Incidence& d, int num_rows)
{
    std::vector<std::vector<int>> cols(static_cast<std::size_t>(num_rows));
    for (std::size_t c = 0; c < d.rows_of.size(); ++c)
        for (int r : d.rows_of[c])
            cols[static_cast<std::size_t>(r)].push_back(static_cast<int>(c));
    return cols;
}

} // namespace

QuboProblem build_slack_qubo(QuboProblem base, const Incidence& d, int num_rows, double weight)
{
    const auto cols = columns_by_row(d, num_rows);
    const int first_slack = base.size();
    for (int r = 0; r < num_rows; ++r)
        base.add_variable({QuboVariable::Kind::Slack, -1, r});
    // (sum_k x_k - 1)^2 over the row's path bits and its slack, all with
    // coefficient 1: each x_k contributes 1 - 2, each pair 2, constant 1.
    for (int r = 0; r < num_rows; ++r) {
        std::vector<int> vars = cols[static_cast<std::size_t>(r)];
        vars.push_back(first_slack + r);
        for (std::size_t k = 0; k < vars.size(); ++k) {
            base.add(vars[k], vars[k], -weight);
            for (std::size_t l = k + 1; l < vars.size(); ++l)
                base.add(vars[k], vars[l], 2.0 * weight);
        }
        base.add_offset(weight);
    }
    return base;
}

QuboProblem build_half_qubo(QuboProblem base, const Incidence& d, int num_rows, double weight)
{
    // r(r - 1) = 2 sum_{k<l} x_k x_l for binary x, so only couplings remain.
    for (const auto& vars : columns_by_row(d, num_rows))
        for (std::size_t k = 0; k < vars.size(); ++k)
            for (std::size_t l = k + 1; l < vars.size(); ++l)
                base.add(vars[k], vars[l], 2.0 * weight);
    return base;
}

bool ConflictGraph::adjacent(int i, int j) const
{
    if (i > j)
        std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::pair{i, j});
}

std::vector<std::vector<int>> ConflictGraph::neighbours() const
{
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [i, j] : edges) {
        adj[static_cast<std::size_t>(i)].push_back(j);
        adj[static_cast<std::size_t>(j)].push_back(i);
    }
    for (auto& a : adj)
        std::sort(a.begin(), a.end());
    return adj;
}

std::vector<std::vector<int>> ConflictGraph::components() const
{
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (const auto& [i, j] : edges) {
        const int a = find(i), b = find(j);
        if (a != b)
            parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> slot(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        const int root = find(v);
        if (slot[static_cast<std::size_t>(root)] < 0) {
            slot[static_cast<std::size_t>(root)] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].push_back(v);
    }
    return out;
}

ConflictGraph build_conflict_graph(const PathPool& pool, int horizon)
{
    std::set<std::pair<int, int>> pairs;
    for (const SharedResource& r : shared_resources(pool, horizon)) {
        for (std::size_t k = 0; k < r.columns.size(); ++k)
            for (std::size_t l = k + 1; l < r.columns.size(); ++l) {
                const int p = r.columns[k], q = r.columns[l];
                if (pool.agent_of(p) == pool.agent_of(q))
                    continue;
                // Same-direction traversals are caught by the vertex rows.
                if (r.row.kind == RowKind::Edge && r.forward[k] == r.forward[l])
                    continue;
                pairs.emplace(std::min(p, q), std::max(p, q));
            }
    }
    return {pool.size(), {pairs.begin(), pairs.end()}};
}

ConflictGraph build_conflict_graph(const PathPool& pool, const Incidence& d)
{
    std::set<std::pair<int, int>> pairs;
    int rows = 0;
    for (const auto& r : d.rows_of)
        if (!r.empty())
            rows = std::max(rows, r.back() + 1);
    for (const auto& cols : columns_by_row(d, rows))
        for (std::size_t k = 0; k < cols.size(); ++k)
            for (std::size_t l = k + 1; l < cols.size(); ++l)
                if (pool.agent_of(cols[k]) != pool.agent_of(cols[l]))
                    pairs.emplace(cols[k], cols[l]);
    return {pool.size(), {pairs.begin(), pairs.end()}};
}

QuboProblem build_conflict_qubo(QuboProblem base, const ConflictGraph& graph, double weight)
{
    for (const auto& [i, j] : graph.edges)
        base.add(i, j, weight);
    return base;
}

} // namespace qpmapf
