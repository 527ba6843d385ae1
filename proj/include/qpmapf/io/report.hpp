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

#include "qpmapf/mapf/grid.hpp"

#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace qpmapf {

enum class Phase : std::uint8_t { Pricing, Separation };

// Feasible: conflict-free, but pricing was cut short or the backend is
// heuristic, so optimality is not certified.
enum class RunStatus : std::uint8_t { OptimalCertified, Feasible, TimeLimit, Infeasible };

std::string_view to_string(Phase p);
std::string_view to_string(RunStatus s);
Phase parse_phase(std::string_view s);
RunStatus parse_status(std::string_view s);

inline constexpr double kNoIncumbent = std::numeric_limits<double>::infinity();

struct IterationRecord {
    int iteration = 0;
    Phase phase = Phase::Pricing;
    double incumbent = kNoIncumbent; // v-hat
    double lagrangian = 0.0;         // L(lambda)
    double gap = kNoIncumbent;       // incumbent - lagrangian
    int paths = 0;
    int constraints = 0;
    std::vector<int> qubo_sizes; // per component
    int feasible_samples = 0;
    int infeasible_samples = 0;

    friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct RunReport {
    std::vector<IterationRecord> iterations;
    double total_cost = kNoIncumbent;
    double wall_time = 0.0;
    RunStatus status = RunStatus::Infeasible;
    int pricing_steps = 0;
    int horizon = 0;
    // Final paths, one cell list per agent (JSON only).
    std::vector<std::vector<Cell>> paths;
};

inline double gap_bound(const IterationRecord& r) { return r.incumbent - r.lagrangian; }

enum class ReportFormat : std::uint8_t { Json, Csv };

// JSON carries "schema": 1 and is canonical; infinities are written as null.
// CSV has one row per iteration with the final fields repeated on each row,
// numbers printed with %.17g.
std::string write_report(const RunReport& report, ReportFormat format);
// Throws std::runtime_error on malformed input. The CSV reader recovers the
// final fields from the first row, so a header-only CSV loses them.
RunReport read_report(std::string_view text, ReportFormat format);

} // namespace qpmapf
