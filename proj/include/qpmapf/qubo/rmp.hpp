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
#include "qpmapf/qubo/formulations.hpp"
#include "qpmapf/qubo/solvers.hpp"

#include <chrono>
#include <optional>
#include <variant>
#include <vector>

namespace qpmapf {

struct OneHotViolation {
    std::vector<AgentId> agents; // agents with zero or several selected paths
};

// Path bits of `assignment` back to a selection. Slack bits are ignored.
std::variant<RmpSolution, OneHotViolation> decode(const QuboProblem& q, std::span<const std::uint8_t> assignment,
                                                  const PathPool& pool, const ConstraintPool& rows, int horizon);

struct ExactOptions {
    // Known feasible selection; only strictly better ones replace it.
    std::optional<std::vector<int>> hint;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct ExactOutcome {
    std::optional<RmpSolution> solution; // nullopt: no feasible selection found
    bool proven = true;                  // false if the deadline cut the search
};

// Branch and bound over agents in index order, separately per group of
// agents linked through shared rows. Paths are tried cheapest first; a node
// is pruned when its cost plus the cheapest still-compatible path of every
// later agent reaches the incumbent, or when some later agent has no
// compatible path left.
ExactOutcome solve_rmp_exact(const PathPool& pool, const ConstraintPool& rows, int horizon,
                             const ExactOptions& options = {});

enum class QuboBackend : std::uint8_t { Sa, Exhaustive };

struct QuboSolveParams {
    Formulation formulation = Formulation::Conflict;
    QuboBackend backend = QuboBackend::Sa;
    SaParams sa;
    bool decompose = true;
    // Conflict formulation: true uses every conflict between pooled paths,
    // false only the active rows.
    bool all_conflicts = false;
};

struct QuboRmpOutcome {
    std::vector<Sample> samples; // whole-problem samples, energies with offset
    std::optional<RmpSolution> best;      // best decoded, feasible for the active rows
    std::optional<RmpSolution> best_full; // best decoded without any conflict
    int feasible = 0;
    int infeasible = 0;
    int dimension = 0;
    std::vector<int> component_sizes;
};

QuboProblem build_rmp_qubo(const PathPool& pool, const ConstraintPool& rows, int horizon, Formulation f,
                           bool all_conflicts);

// Builds the chosen formulation, optionally splits it into components and
// solves each; sample k of the whole problem joins sample k of every
// component (the exhaustive backend gives one sample).
QuboRmpOutcome solve_rmp_qubo(const PathPool& pool, const ConstraintPool& rows, int horizon,
                              const QuboSolveParams& params);

} // namespace qpmapf
