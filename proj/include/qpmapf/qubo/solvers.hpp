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

#include "qpmapf/qubo/qubo.hpp"

#include <cstdint>
#include <vector>

namespace qpmapf {

struct QuboComponent {
    QuboProblem qubo;        // offset 0
    std::vector<int> parent; // variable k here is parent[k] in the whole problem
};

// Connected components of the non-zero coupling graph, ordered by smallest
// variable. Component offsets are 0; the whole problem's offset stays with
// the caller. A problem without variables yields no components.
std::vector<QuboComponent> decompose(const QuboProblem& q);

struct Sample {
    std::vector<std::uint8_t> assignment;
    double energy = 0.0; // including offset
    friend bool operator==(const Sample&, const Sample&) = default;
};

struct SaParams {
    int samples = 1000;
    int sweeps = 1000;
    double beta_start = 0.1;
    double beta_end = 10.0;
    std::uint64_t seed = 0;
    // After annealing, set every slack bit to its best value given the rest.
    bool polish_slacks = true;
};

// splitmix64 step; used to derive per-sample and per-component seeds.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

// Independent restarts of single-flip Metropolis annealing, one sequential
// sweep per temperature, inverse temperature geometric from beta_start to
// beta_end. Sample k depends only on (q, params, k).
std::vector<Sample> solve_sa(const QuboProblem& q, const SaParams& params);

inline constexpr int kExhaustiveLimit = 25;

// Global minimum by Gray-code enumeration; the first minimum met in Gray
// order wins ties. Throws QuboError above kExhaustiveLimit variables.
Sample solve_exhaustive(const QuboProblem& q);

} // namespace qpmapf
