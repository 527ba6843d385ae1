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
#include "qpmapf/master/pricing.hpp"
#include "qpmapf/qubo/rmp.hpp"
#include "qpmapf/search/astar.hpp"
#include "qpmapf/search/prioritized.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace qpmapf {
namespace {

GridMap open_grid(int w, int h) { return GridMap(w, h, std::string(static_cast<std::size_t>(w * h), '.')); }

// Path with a made-up cost; only the steps tell pooled paths apart.
TimedPath fake(AgentId a, CellId tag, double cost) { return TimedPath{a, 0, {tag}, cost}; }

// Every selection, one path per agent.
template <typename F>
void for_each_selection(const PathPool& pool, F&& f)
{
    std::vector<int> sel(static_cast<std::size_t>(pool.num_agents()), 0);
    for (;;) {
        f(sel);
        std::size_t a = 0;
        while (a < sel.size() && ++sel[a] == pool.count(static_cast<AgentId>(a)))
            sel[a++] = 0;
        if (a == sel.size())
            return;
    }
}

TEST(Pool, NumberingAndDuplicates)
{
    PathPool pool(2);
    EXPECT_TRUE(pool.add(fake(1, 0, 1)));
    EXPECT_TRUE(pool.add(fake(0, 0, 2)));
    EXPECT_TRUE(pool.add(fake(0, 1, 3)));
    EXPECT_FALSE(pool.add(fake(0, 1, 9)));
    EXPECT_EQ(pool.size(), 3);
    EXPECT_EQ(pool.column(1, 0), 2);
    EXPECT_EQ(pool.agent_of(2), 1);
    EXPECT_EQ(pool.at_column(1).cost, 3.0);
    EXPECT_EQ(pool.min_cost(0), 2.0);
    EXPECT_EQ(pool.max_cost(0), 3.0);
}

TEST(ConstraintPool, DualsAndErrors)
{
    ConstraintPool rows;
    EXPECT_TRUE(rows.add(ConstraintRow::vertex(3, 1)));
    EXPECT_TRUE(rows.add(ConstraintRow::edge(5, 4, 2)));
    EXPECT_FALSE(rows.add(ConstraintRow::edge(4, 5, 2)));
    EXPECT_EQ(rows.size(), 2);
    EXPECT_EQ(rows.dual(1), 0.0);
    EXPECT_THROW(rows.set_duals({1.0}), std::invalid_argument);
    EXPECT_THROW(rows.set_duals({1.0, -0.5}), std::invalid_argument);
    rows.set_duals({1.0, 0.5});
    EXPECT_EQ(rows.dual(1), 0.5);
    EXPECT_EQ(rows.index_of(ConstraintRow::edge(4, 5, 2)), 1);
}

TEST(ReducedCost, Examples)
{
    const GridMap map = open_grid(3, 1);
    const TimedPath p = make_path(map, 0, 0, {0, 1, 2});
    ASSERT_EQ(p.cost, 2.0);
    ConstraintPool rows;
    EXPECT_EQ(reduced_cost(p, rows, 4), 2.0);
    rows.add(ConstraintRow::vertex(1, 1));
    rows.set_duals({2.5});
    EXPECT_EQ(reduced_cost(p, rows, 4), 4.5);

    // row stated for the reverse direction 1 -> 0
    ConstraintPool rev;
    rev.add(ConstraintRow::edge(1, 0, 0));
    rev.add(ConstraintRow::vertex(2, 0));
    rev.set_duals({1.0, 7.0});
    EXPECT_EQ(reduced_cost(p, rev, 4), 3.0);
}

TEST(ReducedCost, MatchesMatrixProduct)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const ProblemInstance inst = testing::random_micro_instance(rng);
        const PathPool pool = testing::random_pool(inst, rng, 4);
        ConstraintPool rows;
        for (const ConstraintRow& r : overlap_rows(pool, inst.horizon))
            rows.add(r);
        std::vector<double> lambda(static_cast<std::size_t>(rows.size()));
        for (double& l : lambda)
            l = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
        rows.set_duals(lambda);
        for (int c = 0; c < pool.size(); ++c) {
            const TimedPath& p = pool.at_column(c);
            double want = p.cost;
            for (int i = 0; i < rows.size(); ++i)
                want += lambda[static_cast<std::size_t>(i)] * rows.row(i).coefficient(p);
            EXPECT_NEAR(reduced_cost(p, rows, inst.horizon), want, 1e-12);
        }
    }
}

TEST(Lagrangian, ZeroDualsGivePoolMinima)
{
    PathPool pool(2);
    pool.add(fake(0, 0, 4));
    pool.add(fake(0, 1, 3));
    pool.add(fake(1, 0, 6));
    const Incidence d{{{}, {}, {}}};
    const LagrangianValue v = lagrangian_value(pool, d, std::vector<double>{});
    EXPECT_EQ(v.value, 9.0);
    EXPECT_EQ(v.selection, (std::vector<int>{1, 0}));
}

TEST(Lagrangian, SingleRowCancels)
{
    PathPool pool(1);
    pool.add(fake(0, 0, 5));
    const Incidence d{{{0}}};
    EXPECT_EQ(lagrangian_value(pool, d, std::vector<double>{3.0}).value, 5.0);
}

TEST(Lagrangian, MatchesEnumerationOverSelections)
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const ProblemInstance inst = testing::random_micro_instance(rng);
        const PathPool pool = testing::random_pool(inst, rng, trial % 2 ? 2 : 4);
        ConstraintPool rows;
        for (const ConstraintRow& r : overlap_rows(pool, inst.horizon))
            rows.add(r);
        std::vector<double> lambda(static_cast<std::size_t>(rows.size()));
        for (double& l : lambda)
            l = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
        rows.set_duals(lambda);
        const Incidence d = build_incidence(pool, rows, inst.horizon);
        double best = INFINITY;
        for_each_selection(pool, [&](const std::vector<int>& sel) {
            double v = 0.0;
            std::vector<int> hits(lambda.size(), 0);
            for (AgentId a = 0; a < pool.num_agents(); ++a) {
                const int col = pool.column(a, sel[static_cast<std::size_t>(a)]);
                v += pool.at_column(col).cost;
                for (int i : d.rows_of[static_cast<std::size_t>(col)])
                    ++hits[static_cast<std::size_t>(i)];
            }
            for (std::size_t i = 0; i < lambda.size(); ++i)
                v += lambda[i] * (hits[i] - 1);
            best = std::min(best, v);
        });
        EXPECT_NEAR(lagrangian_value(pool, d, lambda).value, best, 1e-9);
    }
}

TEST(Lagrangian, WeakDuality)
{
    std::mt19937_64 rng(5);
    int feasible = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const ProblemInstance inst = testing::random_micro_instance(rng);
        const PathPool pool = testing::random_pool(inst, rng, 4);
        ConstraintPool rows;
        for (const ConstraintRow& r : overlap_rows(pool, inst.horizon))
            rows.add(r);
        const Incidence d = build_incidence(pool, rows, inst.horizon);
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> lambda(static_cast<std::size_t>(rows.size()));
            for (double& l : lambda)
                l = std::uniform_real_distribution<double>(0.0, 5.0)(rng);
            const double L = lagrangian_value(pool, d, lambda).value;
            for_each_selection(pool, [&](const std::vector<int>& sel) {
                const RmpSolution s = evaluate_selection(pool, rows, sel, inst.horizon);
                if (!s.feasible)
                    return;
                ++feasible;
                EXPECT_LE(L, s.objective + 1e-12);
            });
        }
    }
    EXPECT_GT(feasible, 100);
}

TEST(DualAscent, NoRows)
{
    PathPool pool(2);
    pool.add(fake(0, 0, 4));
    pool.add(fake(1, 0, 2));
    const auto r = dual_ascent(pool, Incidence{{{}, {}}}, 0, {});
    EXPECT_TRUE(r.lambda.empty());
    EXPECT_EQ(r.best.value, 6.0);
}

TEST(DualAscent, SharedRowReachesDualBound)
{
    // Cheap paths of both agents share the row; alternatives cost 4 and 5.
    PathPool pool(2);
    pool.add(fake(0, 0, 2));
    pool.add(fake(0, 1, 4));
    pool.add(fake(1, 0, 2));
    pool.add(fake(1, 1, 5));
    const Incidence d{{{0}, {}, {0}, {}}};
    double grid_best = -INFINITY;
    for (int k = 0; k <= 10000; ++k)
        grid_best = std::max(grid_best, lagrangian_value(pool, d, std::vector<double>{k * 0.001}).value);
    EXPECT_NEAR(grid_best, 6.0, 1e-9);

    const auto r = dual_ascent(pool, d, 1, {});
    EXPECT_NEAR(r.best.value, grid_best, 1e-6);
    EXPECT_GE(r.lambda[0], 2.0 - 1e-9);
    EXPECT_LE(r.lambda[0], 3.0 + 1e-9);
    EXPECT_EQ(r.best.selection[0], 1);
    EXPECT_GE(r.best.value, lagrangian_value(pool, d, std::vector<double>{0.0}).value);
}

TEST(DualAscent, FeasibleStartStaysPut)
{
    PathPool pool(2);
    pool.add(fake(0, 0, 3));
    pool.add(fake(1, 0, 4));
    const Incidence d{{{0}, {1}}};
    const double at_zero = lagrangian_value(pool, d, std::vector<double>{0.0, 0.0}).value;
    const auto r = dual_ascent(pool, d, 2, std::vector<double>{0.0, 0.0});
    EXPECT_NEAR(r.best.value, at_zero, 1e-6);
    // a warm start off the optimum is pulled back to it
    const auto warm = dual_ascent(pool, d, 2, std::vector<double>{2.0, 0.0});
    EXPECT_NEAR(warm.best.value, at_zero, 1e-6);
}

TEST(Pricing, FullPoolDoesNotFire)
{
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        ProblemInstance inst = testing::random_micro_instance(rng);
        inst.horizon = std::min(inst.horizon, max_shortest_distance(inst) + 2);
        PathPool pool(inst.num_agents());
        for (const Agent& a : inst.agents)
            for (TimedPath& p : testing::enumerate_paths(inst.map, a, inst.horizon))
                pool.add(std::move(p));
        const PricingOutcome pr = pricing_round(inst, pool, ConstraintPool{}, 1e6, PricingMode::PerAgent);
        EXPECT_FALSE(pr.fired);
        EXPECT_TRUE(pr.added.empty());
        for (double d : pr.delta)
            EXPECT_TRUE(std::isinf(d));
    }
}

TEST(Pricing, ZeroGapWithShortestPathsDoesNotFire)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const ProblemInstance inst = testing::random_micro_instance(rng);
        const TimeExpandedGraph g(inst.map, inst.horizon);
        PathPool pool(inst.num_agents());
        for (const Agent& a : inst.agents)
            pool.add(*astar_shortest(g, a, WeightOverlay{}));
        const double L = lagrangian_value(pool, ConstraintPool{}, inst.horizon).value;
        const PricingOutcome pr = pricing_round(inst, pool, ConstraintPool{}, L, PricingMode::PerAgent);
        EXPECT_EQ(pr.gap, 0.0);
        EXPECT_FALSE(pr.fired);
        for (double d : pr.delta)
            EXPECT_GE(d, 0.0);
    }
}

TEST(Pricing, FiresThenReachesJointOptimum)
{
    ProblemInstance inst;
    inst.map = open_grid(3, 3);
    inst.agents = {{0, inst.map.id({0, 1}), inst.map.id({2, 1}), 0}, {1, inst.map.id({2, 1}), inst.map.id({0, 1}), 0}};
    inst.horizon = 6;
    const auto opt = testing::joint_optimum(inst);
    ASSERT_TRUE(opt);

    const auto init = ppp_initialize(inst, 0);
    ASSERT_TRUE(init);
    PathPool pool(2);
    for (const TimedPath& p : *init)
        pool.add(p);
    ConstraintPool rows;
    bool first = true;
    double v = INFINITY;
    for (int round = 0; round < 100; ++round) {
        for (const ConstraintRow& r : overlap_rows(pool, inst.horizon))
            rows.add(r);
        const ExactOutcome ex = solve_rmp_exact(pool, rows, inst.horizon);
        ASSERT_TRUE(ex.solution);
        v = ex.solution->objective;
        const auto asc = dual_ascent(pool, build_incidence(pool, rows, inst.horizon), rows.size(), rows.duals());
        rows.set_duals(asc.lambda);
        const PricingOutcome pr = pricing_round(inst, pool, rows, v, PricingMode::PerAgent);
        if (first) {
            EXPECT_TRUE(pr.fired);
            first = false;
        }
        if (!pr.fired)
            break;
    }
    EXPECT_EQ(v, *opt);
}

// One agent, two shortest paths of cost 2, one of them pooled: delta = 0.
ProblemInstance two_route_instance(int agents)
{
    ProblemInstance inst;
    inst.map = open_grid(2 * agents, 2);
    for (int a = 0; a < agents; ++a)
        inst.agents.push_back({a, inst.map.id({2 * a, 0}), inst.map.id({2 * a + 1, 1}), 0});
    inst.horizon = 4;
    return inst;
}

TEST(Pricing, IntegralStop)
{
    const ProblemInstance inst = two_route_instance(1);
    auto fresh = [&] {
        PathPool pool(1);
        pool.add(*astar_shortest(TimeExpandedGraph(inst.map, inst.horizon), inst.agents[0], WeightOverlay{}));
        return pool;
    };
    PathPool a = fresh();
    const PricingOutcome plain = pricing_round(inst, a, ConstraintPool{}, 2.5, PricingMode::PerAgent);
    EXPECT_EQ(plain.delta[0], 0.0);
    EXPECT_TRUE(plain.fired);
    PathPool b = fresh();
    EXPECT_FALSE(pricing_round(inst, b, ConstraintPool{}, 2.5, PricingMode::PerAgent, 1.0).fired);
    EXPECT_EQ(b.size(), 1);
    PathPool c = fresh();
    EXPECT_TRUE(pricing_round(inst, c, ConstraintPool{}, 3.0, PricingMode::PerAgent, 1.0).fired);
}

TEST(Pricing, ModesDifferInPathsAdded)
{
    const ProblemInstance inst = two_route_instance(2);
    const TimeExpandedGraph g(inst.map, inst.horizon);
    auto fresh = [&] {
        PathPool pool(2);
        for (const Agent& a : inst.agents)
            pool.add(*astar_shortest(g, a, WeightOverlay{}));
        return pool;
    };
    PathPool p = fresh();
    const PricingOutcome per = pricing_round(inst, p, ConstraintPool{}, 10.0, PricingMode::PerAgent);
    EXPECT_EQ(per.added, (std::vector<AgentId>{0, 1}));
    EXPECT_EQ(p.size(), 4);
    PathPool q = fresh();
    const PricingOutcome global = pricing_round(inst, q, ConstraintPool{}, 10.0, PricingMode::GlobalArgmin);
    EXPECT_EQ(global.added, (std::vector<AgentId>{0}));
    EXPECT_EQ(q.size(), 3);
}

TEST(Separate, Examples)
{
    ProblemInstance inst;
    inst.map = open_grid(3, 2);
    inst.horizon = 4;
    PathPool pool(2);
    pool.add(make_path(inst.map, 0, 0, {0, 1}));
    pool.add(make_path(inst.map, 0, 0, {0, 3, 4, 1}));
    pool.add(make_path(inst.map, 1, 0, {1, 0}));
    ConstraintPool rows;

    const RmpSolution clear = evaluate_selection(pool, rows, {1, 0}, inst.horizon);
    EXPECT_TRUE(clear.fully_feasible);
    EXPECT_TRUE(separate(clear, pool, rows, inst.horizon).empty());

    const RmpSolution swap = evaluate_selection(pool, rows, {0, 0}, inst.horizon);
    EXPECT_FALSE(swap.fully_feasible);
    const auto added = separate(swap, pool, rows, inst.horizon);
    ASSERT_EQ(added.size(), 1U);
    EXPECT_EQ(added[0], ConstraintRow::edge(0, 1, 0));
    EXPECT_EQ(rows.size(), 1);
    EXPECT_EQ(rows.dual(0), 0.0);
    EXPECT_TRUE(separate(swap, pool, rows, inst.horizon).empty());
    EXPECT_EQ(rows.size(), 1);
}

TEST(Separate, IdempotentOnRandomSelections)
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const ProblemInstance inst = testing::random_micro_instance(rng);
        const PathPool pool = testing::random_pool(inst, rng, 3);
        ConstraintPool rows;
        std::vector<int> sel;
        for (AgentId a = 0; a < pool.num_agents(); ++a)
            sel.push_back(std::uniform_int_distribution<int>(0, pool.count(a) - 1)(rng));
        const RmpSolution s = evaluate_selection(pool, rows, sel, inst.horizon);
        const auto first = separate(s, pool, rows, inst.horizon);
        EXPECT_EQ(first.empty(), s.fully_feasible);
        EXPECT_TRUE(separate(s, pool, rows, inst.horizon).empty());
        // after separation the selection violates the active rows unless it was clean
        EXPECT_EQ(evaluate_selection(pool, rows, sel, inst.horizon).feasible, s.fully_feasible);
    }
}

TEST(OverlapRows, OtherRowsHoldAtEverySelection)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const ProblemInstance inst = testing::random_micro_instance(rng);
        const PathPool pool = testing::random_pool(inst, rng, 3);
        ConstraintPool rows;
        for (const ConstraintRow& r : overlap_rows(pool, inst.horizon))
            rows.add(r);
        for_each_selection(pool, [&](const std::vector<int>& sel) {
            const RmpSolution s = evaluate_selection(pool, rows, sel, inst.horizon);
            EXPECT_EQ(s.feasible, s.fully_feasible);
        });
    }
}

} // namespace
} // namespace qpmapf
