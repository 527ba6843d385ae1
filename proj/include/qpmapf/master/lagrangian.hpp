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
#include "qpmapf/search/overlay.hpp"

#include <span>
#include <vector>

namespace qpmapf {

// c_p + sum of lambda_i over the active rows the path touches.
double reduced_cost(const TimedPath& path, const ConstraintPool& rows, int horizon);

struct LagrangianValue {
    double value = 0.0;
    std::vector<int> selection;   // per-agent argmin, first index on ties
    std::vector<double> minimum;  // per-agent min reduced cost
};

// L(lambda) = sum_a min_p cbar_p - sum_i lambda_i. Separable per agent since
// the one-hot set is a product.
LagrangianValue lagrangian_value(const PathPool& pool, const Incidence& d, std::span<const double> lambda);
LagrangianValue lagrangian_value(const PathPool& pool, const ConstraintPool& rows, int horizon);

struct DualAscentParams {
    double eta0 = 1.0;
    double decay = 20.0; // eta_k = eta0 / (1 + k / decay)
    int steps = 200;
};

struct DualAscentResult {
    std::vector<double> lambda;
    LagrangianValue best;
};

// Projected subgradient ascent from `warm` (zero-padded to the row count).
// Returns the best lambda seen; lambda = 0 is always among the candidates.
DualAscentResult dual_ascent(const PathPool& pool, const Incidence& d, int num_rows, std::span<const double> warm,
                             const DualAscentParams& params = {});

// Pricing weights for lambda: vertex rows become vertex surcharges, edge rows
// undirected edge surcharges.
WeightOverlay dual_overlay(const ConstraintPool& rows, int num_cells, int horizon);

} // namespace qpmapf
