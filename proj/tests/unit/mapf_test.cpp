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


#include "oracles.hpp"
#include "qpmapf/mapf/conflict.hpp"
#include "qpmapf/search/prioritized.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace qpmapf {
namespace {

GridMap open_grid(int w, int h) { return GridMap(w, h, std::string(static_cast<std::size_t>(w * h), '.')); }

std::vector<CellId> cells(const GridMap& map, std::initializer_list<Cell> cs)
{
    std::vector<CellId> out;
    for (Cell c : cs)
        out.push_back(map.id(c));
    return out;
}

TimedPath raw_path(const GridMap& map, AgentId a, std::initializer_list<Cell> cs)
{
    TimedPath p{a, 0, cells(map, cs), 0.0};
    p.cost = path_cost(map, p);
    return p;
}

TEST(PathCost, StraightLine)
{
    const GridMap map = open_grid(5, 1);
    EXPECT_EQ(path_cost(map, raw_path(map, 0, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}})), 4.0);
}

TEST(PathCost, OriginIsDestination)
{
    const GridMap map = open_grid(2, 2);
    EXPECT_EQ(path_cost(map, raw_path(map, 0, {{1, 1}})), 0.0);
}

TEST(PathCost, MidRouteWaitsCountTerminalWaitsDoNot)
{
    const GridMap map = open_grid(4, 1);
    const TimedPath p = raw_path(map, 0, {{0, 0}, {1, 0}, {1, 0}, {2, 0}, {2, 0}, {3, 0}, {3, 0}, {3, 0}});
    EXPECT_EQ(path_cost(map, p), 5.0);
}

TEST(PathCost, NonAdjacentStepThrows)
{
    const GridMap map = open_grid(4, 1);
    TimedPath p{0, 0, cells(map, {{0, 0}, {2, 0}}), 0.0};
    EXPECT_THROW(path_cost(map, p), StructuralError);
}

TEST(PathCost, AdditiveUnderConcatenation)
{
    std::mt19937_64 rng(7);
    const GridMap map = open_grid(6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        auto walk = [&](CellId from, int len) {
            std::vector<CellId> s{from};
            while (static_cast<int>(s.size()) <= len) {
                const int k = std::uniform_int_distribution<int>(0, kNumMoves - 1)(rng);
                const CellId n = map.step(s.back(), static_cast<Move>(k));
                if (n != kNoCell)
                    s.push_back(n);
            }
            // end on a real move so the terminal-wait rule stays out of it
            while (s.size() > 1 && s[s.size() - 2] == s.back())
                s.pop_back();
            return s;
        };
        const std::vector<CellId> a = walk(std::uniform_int_distribution<int>(0, 35)(rng), 5);
        const std::vector<CellId> b = walk(a.back(), 5);
        std::vector<CellId> ab = a;
        ab.insert(ab.end(), b.begin() + 1, b.end());
        const double ca = path_cost(map, TimedPath{0, 0, a, 0});
        const double cb = path_cost(map, TimedPath{0, 0, b, 0});
        EXPECT_EQ(path_cost(map, TimedPath{0, 0, ab, 0}), ca + cb);
    }
}

TEST(FindConflicts, CrossingAtDifferentTimes)
{
    const GridMap map = open_grid(3, 3);
    const std::vector<TimedPath> paths{raw_path(map, 0, {{0, 1}, {1, 1}, {2, 1}}),
                                       raw_path(map, 1, {{1, 0}, {1, 0}, {1, 0}, {1, 1}, {1, 2}})};
    EXPECT_TRUE(find_conflicts(paths, 6).empty());
}

TEST(FindConflicts, SwapAtTimeThree)
{
    const GridMap map = open_grid(8, 1);
    const std::vector<TimedPath> paths{raw_path(map, 0, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}}),
                                       raw_path(map, 1, {{6, 0}, {5, 0}, {5, 0}, {4, 0}, {3, 0}})};
    const auto c = find_conflicts(paths, 8);
    ASSERT_EQ(c.size(), 1U);
    EXPECT_EQ(c[0], (Conflict{ConflictKind::Edge, 0, 1, map.id({3, 0}), map.id({4, 0}), 3}));
}

TEST(FindConflicts, ParkedAgentBlocksGoal)
{
    const GridMap map = open_grid(10, 3);
    const TimedPath a = raw_path(map, 0, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}});
    const TimedPath b =
        raw_path(map, 1, {{5, 2}, {5, 2}, {5, 2}, {5, 2}, {5, 2}, {5, 2}, {5, 1}, {5, 0}, {6, 0}});
    const std::vector<TimedPath> paths{a, b};
    const auto c = find_conflicts(paths, 10);
    ASSERT_EQ(c.size(), 1U);
    EXPECT_EQ(c[0], (Conflict{ConflictKind::Vertex, 0, 1, map.id({5, 0}), kNoCell, 7}));
    EXPECT_EQ(testing::simulate_conflicts(paths, 10), c);
}

TEST(FindConflicts, SameAgentTwiceThrows)
{
    const GridMap map = open_grid(3, 1);
    const std::vector<TimedPath> paths{raw_path(map, 0, {{0, 0}}), raw_path(map, 0, {{2, 0}})};
    EXPECT_THROW(find_conflicts(paths, 3), InputError);
}

TEST(FindConflicts, ReverseEdgeSymmetry)
{
    const GridMap map = open_grid(8, 1);
    const TimedPath a = raw_path(map, 0, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
    const TimedPath b = raw_path(map, 1, {{6, 0}, {5, 0}, {5, 0}, {4, 0}, {3, 0}});
    TimedPath a2 = a, b2 = b;
    a2.agent = 1;
    b2.agent = 0;
    const std::vector<TimedPath> fwd{a, b}, rev{b2, a2};
    const auto c1 = find_conflicts(fwd, 8);
    const auto c2 = find_conflicts(rev, 8);
    ASSERT_EQ(c1.size(), 1U);
    ASSERT_EQ(c2.size(), 1U);
    EXPECT_EQ(c2[0].kind, ConflictKind::Edge);
    EXPECT_EQ(c2[0].time, c1[0].time);
    EXPECT_EQ(c2[0].from, c1[0].to);
    EXPECT_EQ(c2[0].to, c1[0].from);
}

TEST(FindConflicts, AgreesWithSimulator)
{
    std::mt19937_64 rng(2026);
    int with_conflicts = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const ProblemInstance inst = testing::random_micro_instance(rng);
        std::vector<TimedPath> chosen;
        for (const Agent& a : inst.agents) {
            auto all = testing::enumerate_paths(inst.map, a, inst.horizon, 5000);
            ASSERT_FALSE(all.empty());
            chosen.push_back(all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)]);
        }
        auto got = find_conflicts(chosen, inst.horizon);
        auto want = testing::simulate_conflicts(chosen, inst.horizon);
        std::sort(want.begin(), want.end());
        std::vector<Conflict> got_sorted = got;
        std::sort(got_sorted.begin(), got_sorted.end());
        EXPECT_EQ(got_sorted, want) << "trial " << trial;
        EXPECT_EQ(paths_conflict(chosen[0], chosen[1], inst.horizon),
                  std::any_of(want.begin(), want.end(), [](const Conflict& c) { return c.first == 0 && c.second == 1; }));
        with_conflicts += !want.empty();
    }
    EXPECT_GT(with_conflicts, 20);
}

TEST(ValidateSolution, SingleAgentShortestPath)
{
    ProblemInstance inst;
    inst.map = open_grid(4, 4);
    inst.agents = {{0, inst.map.id({0, 0}), inst.map.id({3, 2}), 0}};
    inst.horizon = 8;
    const TimedPath p = raw_path(inst.map, 0, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {3, 1}, {3, 2}});
    EXPECT_TRUE(validate_solution(inst, std::vector<TimedPath>{p}).feasible());
}

TEST(ValidateSolution, SwappedPairReportsEdgeConflict)
{
    ProblemInstance inst;
    inst.map = open_grid(2, 1);
    inst.agents = {{0, 0, 1, 0}, {1, 1, 0, 0}};
    inst.horizon = 3;
    const std::vector<TimedPath> paths{raw_path(inst.map, 0, {{0, 0}, {1, 0}}), raw_path(inst.map, 1, {{1, 0}, {0, 0}})};
    const Verdict v = validate_solution(inst, paths);
    ASSERT_FALSE(v.feasible());
    const bool edge = std::any_of(v.violations.begin(), v.violations.end(), [](const Violation& x) {
        return x.kind == ViolationKind::Collision && x.conflict.kind == ConflictKind::Edge;
    });
    EXPECT_TRUE(edge);
}

TEST(ValidateSolution, StructuralProblemsAreReported)
{
    ProblemInstance inst;
    inst.map = open_grid(4, 1);
    inst.agents = {{0, 0, 3, 0}, {1, 1, 2, 0}};
    inst.horizon = 4;
    auto has = [](const Verdict& v, ViolationKind k) {
        return std::any_of(v.violations.begin(), v.violations.end(), [&](const Violation& x) { return x.kind == k; });
    };
    // agent 1 missing, agent 0 does not reach its destination in time
    const std::vector<TimedPath> one{TimedPath{0, 0, {0, 1, 2}, 2}};
    const Verdict v = validate_solution(inst, one);
    EXPECT_TRUE(has(v, ViolationKind::MissingPath));
    EXPECT_TRUE(has(v, ViolationKind::WrongDestination));
    const std::vector<TimedPath> late{TimedPath{0, 0, {0, 1, 1, 2, 3}, 4}, TimedPath{1, 0, {1, 2}, 1}};
    EXPECT_TRUE(has(validate_solution(inst, late), ViolationKind::BeyondHorizon));
    const std::vector<TimedPath> jump{TimedPath{0, 0, {0, 2, 3}, 2}, TimedPath{1, 0, {1, 2}, 1}};
    EXPECT_TRUE(has(validate_solution(inst, jump), ViolationKind::NotAdjacent));
}

TEST(ValidateSolution, PrioritizedPlanningIsFeasible)
{
    std::mt19937_64 rng(99);
    int planned = 0;
    for (int trial = 0; trial < 100; ++trial) {
        ProblemInstance inst = testing::random_micro_instance(rng);
        inst.horizon = horizon_floor(inst) + 2;
        const auto paths = ppp_initialize(inst, static_cast<std::uint64_t>(trial));
        if (!paths)
            continue;
        ++planned;
        const Verdict v = validate_solution(inst, *paths);
        EXPECT_TRUE(v.feasible()) << "trial " << trial;
    }
    EXPECT_GT(planned, 50);
}

TEST(Horizon, FloorAndDefault)
{
    ProblemInstance inst;
    inst.map = open_grid(5, 1);
    inst.agents = {{0, 0, 4, 0}, {1, 4, 2, 0}};
    EXPECT_EQ(max_shortest_distance(inst), 4);
    EXPECT_EQ(horizon_floor(inst), 4 + 2 + 1);
    EXPECT_EQ(default_horizon(inst, 10), 10 + 5 + 1);
    EXPECT_EQ(default_horizon(inst, 2), horizon_floor(inst));
}

} // namespace
} // namespace qpmapf
