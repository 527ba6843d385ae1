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

#include "qpmapf/search/astar.hpp"

#include <cmath>
#include <functional>
#include <queue>
#include <tuple>
#include <unordered_map>

namespace qpmapf {

Move move_between(const GridMap& map, CellId from, CellId to)
{
    if (from == to)
        return Move::Wait;
    const Cell a = map.coord(from);
    const Cell b = map.coord(to);
    if (b.y == a.y - 1)
        return Move::North;
    if (b.x == a.x + 1)
        return Move::East;
    if (b.y == a.y + 1)
        return Move::South;
    return Move::West;
}

int compare_move_sequences(const GridMap& map, std::span<const CellId> a, std::span<const CellId> b)
{
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t k = 1; k < n; ++k) {
        if (a[k] == b[k])
            continue;
        const auto ma = static_cast<int>(move_between(map, a[k - 1], a[k]));
        const auto mb = static_cast<int>(move_between(map, b[k - 1], b[k]));
        return ma < mb ? -1 : 1;
    }
    if (a.size() == b.size())
        return 0;
    return a.size() < b.size() ? -1 : 1;
}

namespace {

constexpr std::uint64_t kGoalBit = std::uint64_t{1} << 63;
constexpr std::uint64_t kNoParent = ~std::uint64_t{0};

struct Record {
    double g;
    std::uint64_t parent;
    bool closed;
};

struct Entry {
    double f;
    int t;
    std::uint64_t key;
    double g;
    bool operator>(const Entry& o) const { return std::tie(f, t, key) > std::tie(o.f, o.t, o.key); }
};

// Node keys pack (time, slot). Slot `cells` stands for "on the destination,
// having just waited there", which may not end the path because that would
// be a trailing wait.
class Search {
  public:
    Search(const TimeExpandedGraph& graph, const Agent& agent, const WeightOverlay& weights)
        : map_(graph.map()), weights_(weights), horizon_(graph.horizon()), origin_(agent.origin),
          destination_(agent.destination), start_(agent.start_time),
          slots_(static_cast<std::uint64_t>(map_.size()) + 1)
    {
    }

    std::optional<std::vector<CellId>> run()
    {
        if (start_ < 0 || start_ >= horizon_ || !map_.passable(origin_) || !map_.passable(destination_))
            return std::nullopt;
        if (map_.manhattan(origin_, destination_) > horizon_ - 1 - start_)
            return std::nullopt;
        const double g0 = weights_.vertex(origin_, start_);
        if (std::isinf(g0))
            return std::nullopt;
        parking_ = weights_.parking_costs(destination_, horizon_);

        const std::uint64_t root = key(start_, origin_, false);
        records_.emplace(root, Record{g0, kNoParent, false});
        open_.push({g0 + map_.manhattan(origin_, destination_), start_, root, g0});

        while (!open_.empty()) {
            const Entry e = open_.top();
            open_.pop();
            if (e.key & kGoalBit)
                return trace(e.key & ~kGoalBit);
            Record& rec = records_.at(e.key);
            if (rec.closed || e.g != rec.g)
                continue;
            rec.closed = true;
            expand(e.key, rec.g);
        }
        return std::nullopt;
    }

  private:
    std::uint64_t key(int t, CellId cell, bool waited) const
    {
        const std::uint64_t slot = waited ? slots_ - 1 : static_cast<std::uint64_t>(cell);
        return static_cast<std::uint64_t>(t) * slots_ + slot;
    }
    int time_of(std::uint64_t k) const { return static_cast<int>(k / slots_); }
    bool waited_of(std::uint64_t k) const { return k % slots_ == slots_ - 1; }
    CellId cell_of(std::uint64_t k) const { return waited_of(k) ? destination_ : static_cast<CellId>(k % slots_); }

    void expand(std::uint64_t k, double g)
    {
        const int t = time_of(k);
        const CellId cell = cell_of(k);
        const bool waited = waited_of(k);
        if (cell == destination_ && !waited) {
            const double f = g + parking_[static_cast<std::size_t>(t)];
            if (!std::isinf(f))
                open_.push({f, t, k | kGoalBit, f});
        }
        if (t + 1 >= horizon_)
            return;
        for (int m = 0; m < kNumMoves; ++m) {
            const CellId next = map_.step(cell, static_cast<Move>(m));
            if (next == kNoCell)
                continue;
            const int h = map_.manhattan(next, destination_);
            if (h > horizon_ - 1 - (t + 1))
                continue;
            const double step = weights_.step_cost(map_, cell, next, t);
            if (std::isinf(step))
                continue;
            const double g2 = g + step;
            const std::uint64_t nk = key(t + 1, next, cell == destination_ && next == destination_);
            auto [it, inserted] = records_.try_emplace(nk, Record{g2, k, false});
            if (inserted) {
                open_.push({g2 + h, t + 1, nk, g2});
                continue;
            }
            Record& rec = it->second;
            if (rec.closed)
                continue;
            if (g2 < rec.g) {
                rec.g = g2;
                rec.parent = k;
                open_.push({g2 + h, t + 1, nk, g2});
            } else if (g2 == rec.g && prefix_precedes(k, rec.parent)) {
                rec.parent = k;
            }
        }
    }

    std::vector<CellId> trace(std::uint64_t k) const
    {
        std::vector<CellId> cells;
        for (std::uint64_t at = k; at != kNoParent; at = records_.at(at).parent)
            cells.push_back(cell_of(at));
        return {cells.rbegin(), cells.rend()};
    }

    // Both parents sit on the same layer; the earlier divergence decides.
    bool prefix_precedes(std::uint64_t a, std::uint64_t b) const
    {
        const std::vector<CellId> pa = trace(a);
        const std::vector<CellId> pb = trace(b);
        return compare_move_sequences(map_, pa, pb) < 0;
    }

    const GridMap& map_;
    const WeightOverlay& weights_;
    int horizon_;
    CellId origin_;
    CellId destination_;
    int start_;
    std::uint64_t slots_;
    std::vector<double> parking_;
    std::unordered_map<std::uint64_t, Record> records_;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open_;
};

} // namespace

std::optional<TimedPath> astar_shortest(const TimeExpandedGraph& graph, const Agent& agent,
                                        const WeightOverlay& weights)
{
    Search search(graph, agent, weights);
    auto cells = search.run();
    if (!cells)
        return std::nullopt;
    return make_path(graph.map(), agent.id, agent.start_time, std::move(*cells));
}

} // namespace qpmapf
