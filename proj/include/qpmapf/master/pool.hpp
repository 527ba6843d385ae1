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

#include "qpmapf/mapf/conflict.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace qpmapf {

// Per-agent path lists. Columns are numbered agent-major: all paths of agent
// 0, then agent 1, and so on, so adding a path renumbers later agents.
class PathPool {
  public:
    PathPool() = default;
    explicit PathPool(int num_agents) : paths_(static_cast<std::size_t>(num_agents)), offsets_(paths_.size() + 1, 0) {}

    int num_agents() const { return static_cast<int>(paths_.size()); }
    int size() const { return offsets_.back(); }
    std::span<const TimedPath> paths(AgentId a) const { return paths_[static_cast<std::size_t>(a)]; }
    const TimedPath& path(AgentId a, int k) const { return paths_[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)]; }
    int count(AgentId a) const { return static_cast<int>(paths_[static_cast<std::size_t>(a)].size()); }

    int column(AgentId a, int k) const { return offsets_[static_cast<std::size_t>(a)] + k; }
    AgentId agent_of(int column) const;
    const TimedPath& at_column(int column) const;

    bool contains(const TimedPath& p) const;
    // False (and no change) if the agent already has this exact route.
    bool add(TimedPath p);

    double min_cost(AgentId a) const;
    double max_cost(AgentId a) const;

  private:
    std::vector<std::vector<TimedPath>> paths_;
    std::vector<int> offsets_{0};
};

enum class RowKind : std::uint8_t { Vertex, Edge };

// A vertex row caps occupancy of (a, time) at one agent. An edge row caps the
// traversals of {a, b} between time and time + 1, both directions counted;
// a < b always.
struct ConstraintRow {
    RowKind kind = RowKind::Vertex;
    CellId a = kNoCell;
    CellId b = kNoCell;
    int time = 0;

    static ConstraintRow vertex(CellId cell, int time) { return {RowKind::Vertex, cell, kNoCell, time}; }
    static ConstraintRow edge(CellId u, CellId v, int time)
    {
        return {RowKind::Edge, u < v ? u : v, u < v ? v : u, time};
    }
    static ConstraintRow from_conflict(const Conflict& c);

    std::uint64_t key() const;
    // D entry: 1 if the path occupies the vertex / traverses the edge.
    int coefficient(const TimedPath& path) const;

    friend bool operator==(const ConstraintRow&, const ConstraintRow&) = default;
    friend auto operator<=>(const ConstraintRow&, const ConstraintRow&) = default;
};

// Active rows of D with their duals, in insertion order.
class ConstraintPool {
  public:
    int size() const { return static_cast<int>(rows_.size()); }
    bool empty() const { return rows_.empty(); }
    std::span<const ConstraintRow> rows() const { return rows_; }
    const ConstraintRow& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
    std::span<const double> duals() const { return duals_; }
    double dual(int i) const { return duals_[static_cast<std::size_t>(i)]; }

    std::optional<int> index_of(const ConstraintRow& r) const;
    bool contains(const ConstraintRow& r) const { return index_of(r).has_value(); }
    // New rows start with a zero dual. False if already present.
    bool add(const ConstraintRow& r);
    // Throws std::invalid_argument on a size mismatch or a negative dual.
    void set_duals(std::vector<double> lambda);

  private:
    std::vector<ConstraintRow> rows_;
    std::vector<double> duals_;
    std::unordered_map<std::uint64_t, int> index_;
};

// Sparse D by column: the rows each pooled path touches, ascending. Every
// stored entry is 1; a path cannot occupy a timed vertex or edge twice.
struct Incidence {
    std::vector<std::vector<int>> rows_of;
};

Incidence build_incidence(const PathPool& pool, const ConstraintPool& rows, int horizon);

// Rows touched by one path, ascending.
std::vector<int> rows_touched(const TimedPath& path, const ConstraintPool& rows, int horizon);

// A timed vertex or undirected timed edge used by pooled paths of at least
// two agents. `forward[k]` says whether columns[k] traverses a -> b (always
// true for vertices).
struct SharedResource {
    ConstraintRow row;
    std::vector<int> columns;
    std::vector<std::uint8_t> forward;
};

// Sorted by row.
std::vector<SharedResource> shared_resources(const PathPool& pool, int horizon);

// Rows where pooled paths of at least two agents overlap. Every other row of
// the full master problem holds at any one-hot selection over the pool, so
// these rows stand in for all of them.
std::vector<ConstraintRow> overlap_rows(const PathPool& pool, int horizon);

struct RmpSolution {
    std::vector<int> selection; // path index per agent
    double objective = 0.0;
    bool feasible = false;       // against the active rows
    bool fully_feasible = false; // no conflicts at all

    std::vector<TimedPath> paths(const PathPool& pool) const;
};

RmpSolution evaluate_selection(const PathPool& pool, const ConstraintPool& rows, std::vector<int> selection,
                               int horizon);

} // namespace qpmapf
