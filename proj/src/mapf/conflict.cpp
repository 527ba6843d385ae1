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

#include "qpmapf/mapf/conflict.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace qpmapf {

namespace {

struct Occupancy {
    int time;
    CellId cell;
    AgentId agent;
    auto key() const { return std::tie(time, cell, agent); }
};

struct Traversal {
    int time;
    CellId lo;
    CellId hi;
    bool forward; // lo -> hi
    AgentId agent;
    auto key() const { return std::tie(time, lo, hi, forward, agent); }
};

} // namespace

std::vector<Conflict> find_conflicts(std::span<const TimedPath> paths, int horizon)
{
    std::set<AgentId> seen;
    for (const TimedPath& p : paths)
        if (!seen.insert(p.agent).second)
            throw InputError("two paths given for agent " + std::to_string(p.agent));

    std::vector<Occupancy> occupied;
    std::vector<Traversal> moves;
    for (const TimedPath& p : paths) {
        for_each_occupied(p, horizon, [&](CellId c, int t) { occupied.push_back({t, c, p.agent}); });
        for_each_traversal(p, [&](CellId from, CellId to, int t) {
            if (t + 1 < horizon)
                moves.push_back({t, std::min(from, to), std::max(from, to), from < to, p.agent});
        });
    }
    std::sort(occupied.begin(), occupied.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
    std::sort(moves.begin(), moves.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });

    std::vector<Conflict> conflicts;
    for (std::size_t i = 0; i < occupied.size();) {
        std::size_t j = i;
        while (j < occupied.size() && occupied[j].time == occupied[i].time && occupied[j].cell == occupied[i].cell)
            ++j;
        for (std::size_t a = i; a < j; ++a)
            for (std::size_t b = a + 1; b < j; ++b)
                conflicts.push_back({ConflictKind::Vertex, occupied[a].agent, occupied[b].agent, occupied[i].cell,
                                     kNoCell, occupied[i].time});
        i = j;
    }
    for (std::size_t i = 0; i < moves.size();) {
        std::size_t j = i;
        while (j < moves.size() && moves[j].time == moves[i].time && moves[j].lo == moves[i].lo &&
               moves[j].hi == moves[i].hi)
            ++j;
        for (std::size_t a = i; a < j; ++a)
            for (std::size_t b = i; b < j; ++b) {
                if (moves[a].forward == moves[b].forward || moves[a].agent > moves[b].agent)
                    continue;
                const Traversal& first = moves[a];
                const CellId from = first.forward ? first.lo : first.hi;
                const CellId to = first.forward ? first.hi : first.lo;
                conflicts.push_back({ConflictKind::Edge, first.agent, moves[b].agent, from, to, first.time});
            }
        i = j;
    }
    std::sort(conflicts.begin(), conflicts.end(), [](const Conflict& a, const Conflict& b) {
        return std::tie(a.time, a.kind, a.first, a.second, a.from, a.to) <
               std::tie(b.time, b.kind, b.first, b.second, b.from, b.to);
    });
    return conflicts;
}

bool paths_conflict(const TimedPath& a, const TimedPath& b, int horizon)
{
    const int begin = std::max(a.start_time, b.start_time);
    for (int t = begin; t < horizon; ++t) {
        const CellId pa = a.at(t);
        const CellId pb = b.at(t);
        if (pa == pb)
            return true;
        if (t + 1 < horizon) {
            const CellId na = a.at(t + 1);
            const CellId nb = b.at(t + 1);
            if (pa != na && na == pb && nb == pa)
                return true;
        }
        if (t > std::max(a.arrival_time(), b.arrival_time()))
            break; // both parked on distinct cells from here on
    }
    return false;
}

Verdict validate_solution(const ProblemInstance& instance, std::span<const TimedPath> paths)
{
    Verdict verdict;
    auto report = [&](ViolationKind kind, AgentId agent, std::string message) {
        verdict.violations.push_back({kind, agent, std::move(message), {}});
    };

    std::vector<int> count(instance.agents.size(), 0);
    std::vector<TimedPath> checkable;
    for (const TimedPath& p : paths) {
        if (p.agent < 0 || p.agent >= instance.num_agents()) {
            report(ViolationKind::UnknownAgent, p.agent, "path for unknown agent");
            continue;
        }
        if (++count[static_cast<std::size_t>(p.agent)] > 1) {
            report(ViolationKind::DuplicatePath, p.agent, "more than one path for agent");
            continue;
        }
        const Agent& agent = instance.agents[static_cast<std::size_t>(p.agent)];
        bool ok = !p.steps.empty();
        if (!ok) {
            report(ViolationKind::NotAdjacent, p.agent, "empty path");
            continue;
        }
        if (p.start_time != agent.start_time) {
            report(ViolationKind::WrongStartTime, p.agent, "path starts at the wrong time");
            ok = false;
        }
        if (p.steps.front() != agent.origin) {
            report(ViolationKind::WrongOrigin, p.agent, "path does not start at the origin");
            ok = false;
        }
        if (p.steps.back() != agent.destination) {
            report(ViolationKind::WrongDestination, p.agent, "path does not end at the destination");
            ok = false;
        }
        for (CellId c : p.steps)
            if (c < 0 || c >= instance.map.size() || !instance.map.passable(c)) {
                report(ViolationKind::BlockedCell, p.agent, "path visits a blocked cell");
                ok = false;
                break;
            }
        if (ok)
            for (std::size_t k = 0; k + 1 < p.steps.size(); ++k)
                if (!instance.map.adjacent_or_same(p.steps[k], p.steps[k + 1])) {
                    report(ViolationKind::NotAdjacent, p.agent, "non-adjacent step at index " + std::to_string(k));
                    ok = false;
                    break;
                }
        if (p.arrival_time() >= instance.horizon) {
            report(ViolationKind::BeyondHorizon, p.agent, "path arrives after the horizon");
            ok = false;
        }
        if (ok)
            checkable.push_back(p);
    }
    for (std::size_t a = 0; a < count.size(); ++a)
        if (count[a] == 0)
            report(ViolationKind::MissingPath, static_cast<AgentId>(a), "no path for agent");

    for (const Conflict& c : find_conflicts(checkable, instance.horizon))
        verdict.violations.push_back({ViolationKind::Collision, c.first, to_string(c, instance.map), c});
    return verdict;
}

std::string to_string(const Conflict& conflict, const GridMap& map)
{
    auto cell = [&](CellId id) {
        const Cell c = map.coord(id);
        return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
    };
    std::string s = conflict.kind == ConflictKind::Vertex ? "vertex conflict" : "edge conflict";
    s += " between agents " + std::to_string(conflict.first) + " and " + std::to_string(conflict.second) + " at ";
    s += cell(conflict.from);
    if (conflict.kind == ConflictKind::Edge)
        s += "<->" + cell(conflict.to);
    s += " t=" + std::to_string(conflict.time);
    return s;
}

} // namespace qpmapf
