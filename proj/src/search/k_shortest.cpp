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

#include "qpmapf/search/k_shortest.hpp"

#include "qpmapf/mapf/conflict.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qpmapf {

namespace {

constexpr std::int8_t kEnd = kNumMoves;
constexpr std::int8_t kNone = -1;

struct ToGo {
    double cost = kBlocked;
    int len = 0;
    std::int8_t choice = kNone;
};

// Best completion (cost, length, then move order) from every timed vertex
// that can still reach the destination before the horizon.
class CompletionTable {
  public:
    CompletionTable(const TimeExpandedGraph& graph, const Agent& agent, const WeightOverlay& weights)
        : map_(graph.map()), weights_(weights), horizon_(graph.horizon()), start_(agent.start_time),
          origin_(agent.origin), destination_(agent.destination), cells_(map_.size()),
          table_(static_cast<std::size_t>(horizon_ - start_) * static_cast<std::size_t>(cells_)),
          waited_(static_cast<std::size_t>(horizon_ - start_))
    {
        parking_ = weights.parking_costs(destination_, horizon_);
        for (int t = horizon_ - 1; t >= start_; --t)
            for (CellId c = 0; c < cells_; ++c) {
                if (!map_.passable(c) || map_.manhattan(origin_, c) > t - start_ ||
                    map_.manhattan(c, destination_) > horizon_ - 1 - t)
                    continue;
                at(c, t, false) = evaluate(c, t, false);
                if (c == destination_)
                    at(c, t, true) = evaluate(c, t, true);
            }
    }

    const ToGo& get(CellId c, int t, bool waited) const
    {
        if (waited)
            return waited_[static_cast<std::size_t>(t - start_)];
        return table_[index(c, t)];
    }
    double parking(int t) const { return parking_[static_cast<std::size_t>(t)]; }

    void append_completion(std::vector<CellId>& cells, CellId c, int t, bool waited) const
    {
        for (;;) {
            const std::int8_t choice = get(c, t, waited).choice;
            if (choice == kEnd || choice == kNone)
                return;
            const CellId next = map_.step(c, static_cast<Move>(choice));
            waited = c == destination_ && next == destination_;
            c = next;
            ++t;
            cells.push_back(c);
        }
    }

  private:
    std::size_t index(CellId c, int t) const
    {
        return static_cast<std::size_t>(t - start_) * static_cast<std::size_t>(cells_) + static_cast<std::size_t>(c);
    }
    ToGo& at(CellId c, int t, bool waited)
    {
        return waited ? waited_[static_cast<std::size_t>(t - start_)] : table_[index(c, t)];
    }

    ToGo evaluate(CellId c, int t, bool waited)
    {
        ToGo best;
        if (c == destination_ && !waited && !std::isinf(parking(t)))
            best = {parking(t), 0, kEnd};
        if (t + 1 >= horizon_)
            return best;
        for (int m = 0; m < kNumMoves; ++m) {
            const CellId next = map_.step(c, static_cast<Move>(m));
            if (next == kNoCell)
                continue;
            const ToGo& rest = at(next, t + 1, c == destination_ && next == destination_);
            if (rest.choice == kNone)
                continue;
            const double step = weights_.step_cost(map_, c, next, t);
            if (std::isinf(step))
                continue;
            const double cost = step + rest.cost;
            const int len = rest.len + 1;
            if (cost < best.cost || (cost == best.cost && len < best.len))
                best = {cost, len, static_cast<std::int8_t>(m)};
        }
        return best;
    }

    const GridMap& map_;
    const WeightOverlay& weights_;
    int horizon_;
    int start_;
    CellId origin_;
    CellId destination_;
    int cells_;
    std::vector<double> parking_;
    std::vector<ToGo> table_;
    std::vector<ToGo> waited_;
};

struct TrieNode {
    CellId cell;
    int time;
    bool waited;
    bool terminal = false;
    double prefix_cost;
    int parent;
    std::array<int, kNumMoves> child{-1, -1, -1, -1, -1};
};

struct Candidate {
    double cost = kBlocked;
    int len = 0;
    int node = -1;
    std::int8_t move = kNone; // kEnd: stop at the trie node
};

} // namespace

std::optional<TimedPath> next_cheapest_path(const TimeExpandedGraph& graph, const Agent& agent,
                                            const WeightOverlay& weights, std::span<const TimedPath> exclude)
{
    if (exclude.empty())
        return astar_shortest(graph, agent, weights);

    const GridMap& map = graph.map();
    const int horizon = graph.horizon();
    const int start = agent.start_time;
    const CellId dest = agent.destination;
    if (start < 0 || start >= horizon || !map.passable(agent.origin) || !map.passable(dest))
        return std::nullopt;

    std::vector<TrieNode> trie;
    trie.push_back({agent.origin, start, false, false, weights.vertex(agent.origin, start), -1});
    for (const TimedPath& p : exclude) {
        if (p.agent != agent.id || p.start_time != start || p.steps.empty() || p.steps.front() != agent.origin)
            throw InputError("excluded path does not belong to this agent");
        std::vector<CellId> steps = p.steps;
        trim_terminal_waits(steps);
        int node = 0;
        for (std::size_t k = 1; k < steps.size(); ++k) {
            const auto m = static_cast<std::size_t>(move_between(map, steps[k - 1], steps[k]));
            int next = trie[static_cast<std::size_t>(node)].child[m];
            if (next < 0) {
                const TrieNode& from = trie[static_cast<std::size_t>(node)];
                TrieNode child{steps[k],
                               from.time + 1,
                               steps[k - 1] == dest && steps[k] == dest,
                               false,
                               from.prefix_cost + weights.step_cost(map, steps[k - 1], steps[k], from.time),
                               node};
                next = static_cast<int>(trie.size());
                trie[static_cast<std::size_t>(node)].child[m] = next;
                trie.push_back(child);
            }
            node = next;
        }
        trie[static_cast<std::size_t>(node)].terminal = true;
    }

    const CompletionTable table(graph, agent, weights);

    auto build = [&](const Candidate& c) {
        std::vector<CellId> cells;
        for (int n = c.node; n >= 0; n = trie[static_cast<std::size_t>(n)].parent)
            cells.push_back(trie[static_cast<std::size_t>(n)].cell);
        std::reverse(cells.begin(), cells.end());
        if (c.move != kEnd) {
            const TrieNode& from = trie[static_cast<std::size_t>(c.node)];
            const CellId next = map.step(from.cell, static_cast<Move>(c.move));
            cells.push_back(next);
            table.append_completion(cells, next, from.time + 1, from.cell == dest && next == dest);
        }
        return cells;
    };

    Candidate best;
    auto offer = [&](const Candidate& c) {
        if (c.cost < best.cost || (c.cost == best.cost && c.len < best.len)) {
            best = c;
        } else if (c.cost == best.cost && c.len == best.len && best.node >= 0) {
            if (compare_move_sequences(map, build(c), build(best)) < 0)
                best = c;
        }
    };

    for (std::size_t i = 0; i < trie.size(); ++i) {
        const TrieNode& n = trie[i];
        const int node = static_cast<int>(i);
        if (n.time < horizon && n.cell == dest && !n.waited && !n.terminal) {
            const double cost = n.prefix_cost + table.parking(n.time);
            if (!std::isinf(cost))
                offer({cost, n.time - start, node, kEnd});
        }
        if (n.time + 1 >= horizon)
            continue;
        for (int m = 0; m < kNumMoves; ++m) {
            if (n.child[static_cast<std::size_t>(m)] >= 0)
                continue;
            const CellId next = map.step(n.cell, static_cast<Move>(m));
            if (next == kNoCell || map.manhattan(next, dest) > horizon - 1 - (n.time + 1))
                continue;
            const ToGo& rest = table.get(next, n.time + 1, n.cell == dest && next == dest);
            if (rest.choice == -1)
                continue;
            const double step = weights.step_cost(map, n.cell, next, n.time);
            if (std::isinf(step))
                continue;
            offer({n.prefix_cost + step + rest.cost, n.time + 1 - start + rest.len, node, static_cast<std::int8_t>(m)});
        }
    }
    if (best.node < 0)
        return std::nullopt;
    return make_path(map, agent.id, start, build(best));
}

} // namespace qpmapf
