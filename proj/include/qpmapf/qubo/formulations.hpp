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

#include "qpmapf/master/pool.hpp"
#include "qpmapf/qubo/qubo.hpp"

#include <utility>
#include <vector>

namespace qpmapf {

enum class Formulation : std::uint8_t { Slack, Half, Conflict };

// 1 + sum_a (max_a c - min_a c): more than any objective gain from breaking
// a single constraint.
double constraint_penalty(const PathPool& pool);

// One-hot weight for agent a: max_a c + constraint_penalty. Dropping an
// agent then always costs more than any feasible selection over the pool.
std::vector<double> one_hot_penalties(const PathPool& pool);

// c^T z + sum_a w_a (1^T z_a - 1)^2. Variable k is pool column k. Throws
// QuboError if some agent has no path.
QuboProblem build_base_objective(const PathPool& pool);
QuboProblem build_base_objective(const PathPool& pool, const std::vector<double>& one_hot);

// + w ||D z - 1 + s||^2 with one slack per row; slack of row i gets index
// base.size() + i.
QuboProblem build_slack_qubo(QuboProblem base, const Incidence& d, int num_rows, double weight);

// + w * r(r - 1) per row with r = (D z)_row, i.e. w ||D z - 1/2||^2 minus the
// constant m/4.
QuboProblem build_half_qubo(QuboProblem base, const Incidence& d, int num_rows, double weight);

// Undirected adjacency over pool columns; pairs are (i < j), sorted.
struct ConflictGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    bool adjacent(int i, int j) const;
    std::vector<std::vector<int>> neighbours() const;
    // Column sets of the connected components, each sorted, ordered by their
    // smallest column.
    std::vector<std::vector<int>> components() const;
};

// Edge between paths of different agents iff they have a vertex or swap
// conflict anywhere in [0, horizon).
ConflictGraph build_conflict_graph(const PathPool& pool, int horizon);
// Edge iff the two paths (of different agents) share an active row.
ConflictGraph build_conflict_graph(const PathPool& pool, const Incidence& d);

// + w per adjacency with both endpoints selected.
QuboProblem build_conflict_qubo(QuboProblem base, const ConflictGraph& graph, double weight);

} // namespace qpmapf
