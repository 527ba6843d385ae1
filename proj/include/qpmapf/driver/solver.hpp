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

#include "qpmapf/io/report.hpp"
#include "qpmapf/master/pricing.hpp"
#include "qpmapf/qubo/rmp.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace qpmapf {

// Qp keeps every row where pooled paths overlap; Qcp adds rows only for
// conflicts of the current RMP solution.
enum class Algorithm : std::uint8_t { Qp, Qcp };
enum class RmpBackend : std::uint8_t { Exact, Sa, Exhaustive };
// Default: PPP picks the horizon (see default_horizon). Fixed: use the
// instance's horizon as given and never enlarge it.
enum class HorizonPolicy : std::uint8_t { Default, Fixed };

struct PricingObservation;

struct SolverConfig {
    Algorithm algorithm = Algorithm::Qp;
    RmpBackend backend = RmpBackend::Exact;
    Formulation formulation = Formulation::Conflict;
    int max_pricing_steps = 30; // over the whole run
    double time_limit_seconds = 180.0;
    DualAscentParams dual;
    SaParams sa;
    bool decompose = true;
    PricingMode pricing_mode = PricingMode::PerAgent;
    // Stop pricing once no new path can lead to a solution at least one unit
    // cheaper than the incumbent (valid because all weights are integers).
    // Off by default: the plain test stops only when no new path can lead
    // to any solution below the incumbent.
    bool integral_stop = false;
    std::uint64_t seed = 0;
    HorizonPolicy horizon_policy = HorizonPolicy::Default;
    int ppp_attempts = 10;
    int horizon_enlargements = 3;
    double horizon_growth = 1.5;
    int max_outer_rounds = 10;
    // Called after every pricing round; when it fired, the priced paths are
    // already in the pool.
    std::function<void(const PricingObservation&)> observer;
};

struct PricingObservation {
    const ProblemInstance& instance; // horizon as used by the run
    const PathPool& pool;
    const ConstraintPool& rows; // duals from the latest ascent
    const PricingOutcome& pricing;
    double incumbent;
};

struct RunResult {
    RunReport report;
    std::vector<TimedPath> paths; // empty when infeasible
    int horizon = 0;
    PathPool pool;
    ConstraintPool rows;
};

// Column generation with separation; see README for the loop structure.
RunResult run(const ProblemInstance& instance, const SolverConfig& config);

// Best and worst map to 0 and 1; a missing value counts as the worst present
// one. Fewer than two distinct values give all zeros.
std::vector<double> relative_metric(const std::vector<std::optional<double>>& values);

std::string_view to_string(Algorithm a);
std::string_view to_string(RmpBackend b);
std::string_view to_string(Formulation f);
// Throw std::invalid_argument on unknown names.
Algorithm parse_algorithm(std::string_view s);
RmpBackend parse_backend(std::string_view s);
Formulation parse_formulation(std::string_view s);
PricingMode parse_pricing_mode(std::string_view s);

} // namespace qpmapf
