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

#include "qpmapf/mapf/path.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpmapf {

enum class ConflictKind : std::uint8_t { Vertex, Edge };

// Agents are ordered first < second. A vertex conflict stores its cell in
// `from`; an edge conflict stores the move of `first` (from -> to, departing
// at `time`), so `second` moved to -> from.
struct Conflict {
    ConflictKind kind = ConflictKind::Vertex;
    AgentId first = 0;
    AgentId second = 0;
    CellId from = kNoCell;
    CellId to = kNoCell;
    int time = 0;

    friend bool operator==(const Conflict&, const Conflict&) = default;
    friend auto operator<=>(const Conflict&, const Conflict&) = default;
};

class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// All pairwise vertex and swap conflicts over [0, horizon), with arrived
// agents holding their destination. Sorted by (time, kind, agents, cells).
// Throws InputError if two paths belong to the same agent.
std::vector<Conflict> find_conflicts(std::span<const TimedPath> paths, int horizon);

// True if the two paths (of different agents) share any vertex or swap
// conflict. Cheaper than find_conflicts when only a yes/no is needed.
bool paths_conflict(const TimedPath& a, const TimedPath& b, int horizon);

enum class ViolationKind : std::uint8_t {
    MissingPath,
    DuplicatePath,
    UnknownAgent,
    WrongOrigin,
    WrongDestination,
    WrongStartTime,
    NotAdjacent,
    BlockedCell,
    BeyondHorizon,
    Collision,
};

struct Violation {
    ViolationKind kind;
    AgentId agent = -1;
    std::string message;
    Conflict conflict{};
};

struct Verdict {
    std::vector<Violation> violations;
    bool feasible() const { return violations.empty(); }
};

// Checks one path per agent, endpoints, adjacency, horizon bounds and
// conflict-freeness. Problems are reported, never thrown.
Verdict validate_solution(const ProblemInstance& instance, std::span<const TimedPath> paths);

std::string to_string(const Conflict& conflict, const GridMap& map);

} // namespace qpmapf
