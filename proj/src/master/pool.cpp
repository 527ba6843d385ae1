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

#include "qpmapf/master/pool.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace qpmapf {

AgentId PathPool::agent_of(int column) const
{
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), column);
    return static_cast<AgentId>(it - offsets_.begin() - 1);
}

const TimedPath& PathPool::at_column(int column) const
{
    const AgentId a = agent_of(column);
    return path(a, column - offsets_[static_cast<std::size_t>(a)]);
}

bool PathPool::contains(const TimedPath& p) const
{
    if (p.agent < 0 || p.agent >= num_agents())
        return false;
    for (const TimedPath& q : paths(p.agent))
        if (q.same_route(p))
            return true;
    return false;
}

bool PathPool::add(TimedPath p)
{
    if (p.agent < 0 || p.agent >= num_agents())
        throw std::out_of_range("path agent outside pool");
    if (contains(p))
        return false;
    paths_[static_cast<std::size_t>(p.agent)].push_back(std::move(p));
    for (std::size_t a = 0; a < paths_.size(); ++a)
        offsets_[a + 1] = offsets_[a] + static_cast<int>(paths_[a].size());
    return true;
}

double PathPool::min_cost(AgentId a) const
{
    double best = std::numeric_limits<double>::infinity();
    for (const TimedPath& p : paths(a))
        best = std::min(best, p.cost);
    return best;
}

double PathPool::max_cost(AgentId a) const
{
    double worst = -std::numeric_limits<double>::infinity();
    for (const TimedPath& p : paths(a))
        worst = std::max(worst, p.cost);
    return worst;
}

ConstraintRow ConstraintRow::from_conflict(const Conflict& c)
{
    if (c.kind == ConflictKind::Vertex)
        return vertex(c.from, c.time);
    return edge(c.from, c.to, c.time);
}

std::uint64_t ConstraintRow::key() const
{
    const auto hi = static_cast<std::uint64_t>(b == kNoCell ? 0 : b);
    return (static_cast<std::uint64_t>(time) << 43) | (static_cast<std::uint64_t>(kind) << 42) |
           (static_cast<std::uint64_t>(a) << 21) | hi;
}

int ConstraintRow::coefficient(const TimedPath& path) const
{
    if (kind == RowKind::Vertex)
        return path.at(time) == a ? 1 : 0;
    const CellId u = path.at(time);
    const CellId v = path.at(time + 1);
    if (u == kNoCell || u == v)
        return 0;
    return (u == a && v == b) || (u == b && v == a) ? 1 : 0;
}

std::optional<int> ConstraintPool::index_of(const ConstraintRow& r) const
{
    const auto it = index_.find(r.key());
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

bool ConstraintPool::add(const ConstraintRow& r)
{
    const auto [it, inserted] = index_.emplace(r.key(), size());
    if (!inserted)
        return false;
    rows_.push_back(r);
    duals_.push_back(0.0);
    return true;
}

void ConstraintPool::set_duals(std::vector<double> lambda)
{
    if (lambda.size() != rows_.size())
        throw std::invalid_argument("dual vector size does not match the row count");
    for (double l : lambda)
        if (!(l >= 0.0))
            throw std::invalid_argument("duals must be non-negative");
    duals_ = std::move(lambda);
}

std::vector<int> rows_touched(const TimedPath& path, const ConstraintPool& rows, int horizon)
{
    std::vector<int> out;
    if (rows.empty())
        return out;
    for_each_occupied(path, horizon, [&](CellId c, int t) {
        if (const auto i = rows.index_of(ConstraintRow::vertex(c, t)))
            out.push_back(*i);
    });
    for_each_traversal(path, [&](CellId u, CellId v, int t) {
        if (t + 1 >= horizon)
            return;
        if (const auto i = rows.index_of(ConstraintRow::edge(u, v, t)))
            out.push_back(*i);
    });
    std::sort(out.begin(), out.end());
    return out;
}

Incidence build_incidence(const PathPool& pool, const ConstraintPool& rows, int horizon)
{
    Incidence d;
    d.rows_of.resize(static_cast<std::size_t>(pool.size()));
    for (int col = 0; col < pool.size(); ++col)
        d.rows_of[static_cast<std::size_t>(col)] = rows_touched(pool.at_column(col), rows, horizon);
    return d;
}

std::vector<SharedResource> shared_resources(const PathPool& pool, int horizon)
{
    std::map<ConstraintRow, SharedResource> uses;
    auto note = [&](const ConstraintRow& row, int col, bool forward) {
        auto [it, inserted] = uses.try_emplace(row);
        if (inserted)
            it->second.row = row;
        it->second.columns.push_back(col);
        it->second.forward.push_back(forward ? 1 : 0);
    };
    for (int col = 0; col < pool.size(); ++col) {
        const TimedPath& p = pool.at_column(col);
        for_each_occupied(p, horizon, [&](CellId c, int t) { note(ConstraintRow::vertex(c, t), col, true); });
        for_each_traversal(p, [&](CellId u, CellId v, int t) {
            if (t + 1 < horizon)
                note(ConstraintRow::edge(u, v, t), col, u < v);
        });
    }

    std::vector<SharedResource> out;
    for (auto& [row, use] : uses) {
        const AgentId first = pool.agent_of(use.columns.front());
        const bool shared = std::any_of(use.columns.begin(), use.columns.end(),
                                        [&](int col) { return pool.agent_of(col) != first; });
        if (shared)
            out.push_back(std::move(use));
    }
    return out;
}

std::vector<ConstraintRow> overlap_rows(const PathPool& pool, int horizon)
{
    std::vector<ConstraintRow> rows;
    for (const SharedResource& r : shared_resources(pool, horizon))
        rows.push_back(r.row);
    return rows;
}

std::vector<TimedPath> RmpSolution::paths(const PathPool& pool) const
{
    std::vector<TimedPath> out;
    out.reserve(selection.size());
    for (std::size_t a = 0; a < selection.size(); ++a)
        out.push_back(pool.path(static_cast<AgentId>(a), selection[a]));
    return out;
}

RmpSolution evaluate_selection(const PathPool& pool, const ConstraintPool& rows, std::vector<int> selection,
                               int horizon)
{
    RmpSolution s;
    s.selection = std::move(selection);
    std::vector<int> load(static_cast<std::size_t>(rows.size()), 0);
    s.feasible = true;
    for (std::size_t a = 0; a < s.selection.size(); ++a) {
        const TimedPath& p = pool.path(static_cast<AgentId>(a), s.selection[a]);
        s.objective += p.cost;
        for (int i : rows_touched(p, rows, horizon))
            if (++load[static_cast<std::size_t>(i)] > 1)
                s.feasible = false;
    }
    const std::vector<TimedPath> chosen = s.paths(pool);
    s.fully_feasible = find_conflicts(chosen, horizon).empty();
    return s;
}

} // namespace qpmapf
