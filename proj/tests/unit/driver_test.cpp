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
#include "qpmapf/driver/benchmark.hpp"
#include "qpmapf/driver/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include <sys/wait.h>
#include <unistd.h>

namespace qpmapf {
namespace {

namespace fs = std::filesystem;

GridMap open_grid(int w, int h) { return GridMap(w, h, std::string(static_cast<std::size_t>(w * h), '.')); }

ProblemInstance crossing()
{
    ProblemInstance inst;
    inst.map = open_grid(3, 3);
    inst.agents = {{0, inst.map.id({0, 1}), inst.map.id({2, 1}), 0}, {1, inst.map.id({1, 0}), inst.map.id({1, 2}), 0}};
    inst.horizon = 6;
    return inst;
}

SolverConfig exact_fixed()
{
    SolverConfig cfg;
    cfg.horizon_policy = HorizonPolicy::Fixed;
    cfg.max_pricing_steps = 1000;
    return cfg;
}

TEST(Run, SingleAgentCertifiedImmediately)
{
    ProblemInstance inst;
    inst.map = open_grid(5, 5);
    inst.agents = {{0, inst.map.id({0, 0}), inst.map.id({4, 4}), 0}};
    inst.horizon = horizon_floor(inst);
    const RunResult r = run(inst, SolverConfig{});
    EXPECT_EQ(r.report.status, RunStatus::OptimalCertified);
    EXPECT_EQ(r.report.pricing_steps, 0);
    EXPECT_EQ(r.report.total_cost, 8.0);
    ASSERT_EQ(r.paths.size(), 1U);
    EXPECT_TRUE(validate_solution(ProblemInstance{inst.map, inst.agents, r.horizon}, r.paths).feasible());
}

TEST(Run, CrossingMatchesJointOptimum)
{
    const ProblemInstance inst = crossing();
    const auto opt = testing::joint_optimum(inst);
    ASSERT_TRUE(opt);
    SolverConfig cfg = exact_fixed();
    const RunResult r = run(inst, cfg);
    EXPECT_EQ(r.report.status, RunStatus::OptimalCertified);
    EXPECT_EQ(r.report.total_cost, *opt);
    EXPECT_TRUE(validate_solution(inst, r.paths).feasible());
}

TEST(Run, QcpAnnealingVersusExact)
{
    const ProblemInstance inst = crossing();
    const double exact = run(inst, exact_fixed()).report.total_cost;
    int equal = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SolverConfig cfg = exact_fixed();
        cfg.algorithm = Algorithm::Qcp;
        cfg.backend = RmpBackend::Sa;
        cfg.formulation = Formulation::Conflict;
        cfg.sa.samples = 100;
        cfg.sa.sweeps = 200;
        cfg.seed = seed;
        const RunResult r = run(inst, cfg);
        ASSERT_NE(r.report.status, RunStatus::Infeasible);
        EXPECT_NE(r.report.status, RunStatus::OptimalCertified);
        EXPECT_GE(r.report.total_cost, exact);
        EXPECT_TRUE(validate_solution(inst, r.paths).feasible());
        equal += r.report.total_cost == exact;
    }
    EXPECT_GE(equal, 95);
}

TEST(GapBound, Examples)
{
    IterationRecord r;
    r.incumbent = 7.0;
    r.lagrangian = 7.0;
    EXPECT_EQ(gap_bound(r), 0.0);
    r.incumbent = 12.0;
    r.lagrangian = 10.0;
    EXPECT_EQ(gap_bound(r), 2.0);
}

struct MicroRun {
    ProblemInstance inst;
    double optimum = 0.0;
    RunResult result;
};

// Feasible micro instances solved by qp + exact at their own horizon.
std::vector<MicroRun> micro_runs(int count, std::uint64_t seed, Algorithm algo = Algorithm::Qp)
{
    std::mt19937_64 rng(seed);
    std::vector<MicroRun> out;
    while (static_cast<int>(out.size()) < count) {
        MicroRun m{testing::random_micro_instance(rng), 0.0, {}};
        const auto opt = testing::joint_optimum(m.inst);
        if (!opt)
            continue;
        m.optimum = *opt;
        SolverConfig cfg = exact_fixed();
        cfg.algorithm = algo;
        m.result = run(m.inst, cfg);
        out.push_back(std::move(m));
    }
    return out;
}

TEST(GapBound, NonNegativeAndBoundsRmpGap)
{
    // v-hat - L >= v-hat - v(RMP) >= 0 at every logged iteration
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const ProblemInstance inst = testing::random_micro_instance(rng);
        SolverConfig cfg = exact_fixed();
        cfg.observer = [&](const PricingObservation& o) {
            if (!std::isfinite(o.incumbent))
                return;
            EXPECT_GE(o.pricing.gap, -1e-9);
            // RMP over the pool as it was priced: the added paths sit last
            PathPool before(o.pool.num_agents());
            for (AgentId a = 0; a < o.pool.num_agents(); ++a) {
                const bool grew = std::find(o.pricing.added.begin(), o.pricing.added.end(), a) != o.pricing.added.end();
                for (int k = 0; k < o.pool.count(a) - (grew ? 1 : 0); ++k)
                    before.add(o.pool.path(a, k));
            }
            const ExactOutcome ex = solve_rmp_exact(before, o.rows, o.instance.horizon);
            ASSERT_TRUE(ex.solution);
            EXPECT_GE(o.pricing.gap, o.incumbent - ex.solution->objective - 1e-9);
            ++checked;
        };
        run(inst, cfg);
    }
    EXPECT_GT(checked, 50);
}

TEST(GapBound, CertifiedRunsCloseTheTrueGap)
{
    int certified = 0;
    for (const MicroRun& m : micro_runs(60, 22)) {
        const RunReport& rep = m.result.report;
        ASSERT_FALSE(rep.iterations.empty());
        if (rep.status != RunStatus::OptimalCertified)
            continue;
        ++certified;
        EXPECT_EQ(rep.total_cost, m.optimum);
        // the last pricing row did not fire, so its bound covers v-hat - v(MP)
        const IterationRecord& last = rep.iterations.back();
        EXPECT_GE(gap_bound(last), last.incumbent - m.optimum - 1e-9);
    }
    EXPECT_GT(certified, 50);
}

TEST(Run, IncumbentNeverIncreasesInsideInnerLoop)
{
    // QCP may raise v-hat at a separation: new rows can cut off the RMP
    // solution it was taken from. Between separations it only falls.
    for (Algorithm algo : {Algorithm::Qp, Algorithm::Qcp})
        for (const MicroRun& m : micro_runs(60, 23, algo)) {
            double prev = INFINITY;
            for (const IterationRecord& r : m.result.report.iterations) {
                if (r.phase == Phase::Separation) {
                    EXPECT_EQ(algo, Algorithm::Qcp);
                    prev = INFINITY;
                    continue;
                }
                EXPECT_LE(r.incumbent, prev);
                prev = r.incumbent;
            }
        }
}

TEST(Run, CertifiedMeansOptimalAndPathsValidate)
{
    int certified = 0;
    for (Algorithm algo : {Algorithm::Qp, Algorithm::Qcp})
        for (const MicroRun& m : micro_runs(80, 24, algo)) {
            const RunResult& r = m.result;
            ASSERT_NE(r.report.status, RunStatus::Infeasible);
            EXPECT_TRUE(validate_solution(m.inst, r.paths).feasible());
            EXPECT_GE(r.report.total_cost, m.optimum);
            if (r.report.status == RunStatus::OptimalCertified) {
                ++certified;
                EXPECT_EQ(r.report.total_cost, m.optimum);
            }
        }
    EXPECT_GT(certified, 100);
}

TEST(Run, ReportCountsGrow)
{
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 60; ++trial) {
        const ProblemInstance inst = testing::random_micro_instance(rng);
        for (Algorithm algo : {Algorithm::Qp, Algorithm::Qcp}) {
            SolverConfig cfg = exact_fixed();
            cfg.algorithm = algo;
            std::vector<std::pair<int, bool>> seen; // pool size, fired
            cfg.observer = [&](const PricingObservation& o) {
                const int before = o.pool.size() - static_cast<int>(o.pricing.added.size());
                seen.emplace_back(o.pool.size(), o.pricing.fired);
                if (o.pricing.fired) {
                    EXPECT_GT(o.pool.size(), before);
                }
            };
            const RunResult r = run(inst, cfg);
            int prev_rows = 0, prev_paths = 0;
            for (const IterationRecord& rec : r.report.iterations) {
                EXPECT_GE(rec.constraints, prev_rows);
                EXPECT_GE(rec.paths, prev_paths);
                prev_rows = rec.constraints;
                prev_paths = rec.paths;
            }
            for (std::size_t k = 1; k < seen.size(); ++k)
                if (seen[k - 1].second) {
                    EXPECT_GE(seen[k].first, seen[k - 1].first);
                }
        }
    }
}

TEST(Run, ZeroAgentsAndUnreachableGoal)
{
    ProblemInstance empty;
    empty.map = open_grid(2, 2);
    const RunResult r0 = run(empty, SolverConfig{});
    EXPECT_EQ(r0.report.total_cost, 0.0);
    EXPECT_NE(r0.report.status, RunStatus::Infeasible);

    ProblemInstance walled;
    walled.map = GridMap(3, 1, std::string(".@."));
    walled.agents = {{0, 0, 2, 0}};
    walled.horizon = horizon_floor(walled);
    const RunResult r1 = run(walled, SolverConfig{});
    EXPECT_EQ(r1.report.status, RunStatus::Infeasible);
    EXPECT_TRUE(r1.paths.empty());
}

TEST(RelativeMetric, Examples)
{
    EXPECT_EQ(relative_metric({10.0, 20.0, 30.0}), (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_EQ(relative_metric({4.0, 4.0, 4.0}), (std::vector<double>{0.0, 0.0, 0.0}));
    EXPECT_EQ(relative_metric({10.0, 20.0, std::nullopt}), (std::vector<double>{0.0, 1.0, 1.0}));
    EXPECT_EQ(relative_metric({std::nullopt, 3.0}), (std::vector<double>{0.0, 0.0}));
}

TEST(Names, RoundTrip)
{
    for (Algorithm a : {Algorithm::Qp, Algorithm::Qcp})
        EXPECT_EQ(parse_algorithm(to_string(a)), a);
    for (RmpBackend b : {RmpBackend::Exact, RmpBackend::Sa, RmpBackend::Exhaustive})
        EXPECT_EQ(parse_backend(to_string(b)), b);
    for (Formulation f : {Formulation::Slack, Formulation::Half, Formulation::Conflict})
        EXPECT_EQ(parse_formulation(to_string(f)), f);
    EXPECT_EQ(parse_pricing_mode("global-argmin"), PricingMode::GlobalArgmin);
    EXPECT_THROW(parse_algorithm("ilp"), std::invalid_argument);
}

BenchmarkMap bundled_map(int scenarios)
{
    const std::string dir = QPMAPF_DATA_DIR;
    BenchmarkMap bm;
    bm.name = "empty-32-32";
    bm.map = parse_map(read_text_file(dir + "/empty-32-32.map"));
    for (int s = 1; s <= scenarios; ++s)
        bm.scenarios.push_back(parse_scen(read_text_file(dir + "/empty-32-32-random-" + std::to_string(s) + ".scen")));
    return bm;
}

TEST(Benchmark, OneScenarioOneConfig)
{
    const auto configs = parse_configs(R"([{"name": "qp-exact", "algo": "qp", "backend": "exact"}])");
    ASSERT_EQ(configs.size(), 1U);
    const BenchmarkResult r = benchmark({bundled_map(1)}, {5}, configs);
    ASSERT_EQ(r.rows.size(), 1U);
    EXPECT_EQ(r.rows[0].runs, 1);
    EXPECT_EQ(r.rows[0].solved, 1);
    EXPECT_EQ(r.rows[0].sd_cost, 0.0);
    ASSERT_EQ(r.runs.size(), 1U);
    EXPECT_EQ(r.rows[0].mean_cost, r.runs[0].cost);
    const std::string csv = benchmark_csv(r);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(Benchmark, RerunIsByteIdentical)
{
    const auto configs = parse_configs(R"([
        {"name": "qp-exact"},
        {"name": "qcp-sa", "algo": "qcp", "backend": "sa", "samples": 50, "sweeps": 100, "seed": 3}
    ])");
    const std::vector<BenchmarkMap> maps{bundled_map(2)};
    const BenchmarkResult a = benchmark(maps, {4, 6}, configs);
    const BenchmarkResult b = benchmark(maps, {4, 6}, configs);
    EXPECT_EQ(a.rows.size(), 4U);
    EXPECT_EQ(benchmark_csv(a), benchmark_csv(b));
    EXPECT_EQ(a.runs.size(), 8U);
}

TEST(Benchmark, ConfigErrors)
{
    EXPECT_THROW(parse_configs(R"([{"name": "x", "algo": "ilp"}])"), std::invalid_argument);
    EXPECT_ANY_THROW(parse_configs("not json"));
    const auto c = parse_configs(R"([{"name": "x", "integral_stop": true, "max_pricing": 5}])");
    EXPECT_TRUE(c[0].config.integral_stop);
    EXPECT_EQ(c[0].config.max_pricing_steps, 5);
}

// CLI exit codes, run through the real binary.
class Cli : public ::testing::Test {
  protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() / ("qpmapf_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& text)
    {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    static int exit_code(const std::string& args)
    {
        const std::string cmd = std::string(QPMAPF_CLI) + " " + args + " >/dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    fs::path dir_;
};

TEST_F(Cli, FeasibleRunWritesReport)
{
    const std::string data = QPMAPF_DATA_DIR;
    const std::string out = (dir_ / "r.json").string();
    EXPECT_EQ(exit_code("solve --map " + data + "/empty-32-32.map --scen " + data +
                        "/empty-32-32-random-1.scen --agents 4 --out " + out + " --export-qubo " + dir_.string()),
              0);
    const RunReport rep = read_report(read_text_file(out), ReportFormat::Json);
    EXPECT_EQ(rep.status, RunStatus::OptimalCertified);
    EXPECT_EQ(rep.paths.size(), 4U);
    EXPECT_TRUE(fs::exists(dir_ / "final.qubo"));
}

TEST_F(Cli, InfeasibleExitsTwo)
{
    const std::string map = file("wall.map", "type octile\nheight 1\nwidth 3\nmap\n.@.\n");
    const std::string scen = file("wall.scen", "version 1\n0\twall.map\t3\t1\t0\t0\t2\t0\t2\n");
    EXPECT_EQ(exit_code("solve --map " + map + " --scen " + scen + " --agents 1"), 2);
}

TEST_F(Cli, ParseErrorsExitThree)
{
    const std::string map = file("bad.map", "type octile\nheight 2\nwidth 2\nmap\n..\n");
    const std::string scen = file("ok.scen", "version 1\n0\tbad.map\t2\t2\t0\t0\t1\t1\t2\n");
    EXPECT_EQ(exit_code("solve --map " + map + " --scen " + scen + " --agents 1"), 3);
    EXPECT_EQ(exit_code("solve --map " + map), 3);
    EXPECT_EQ(exit_code("solve --map " + map + " --scen " + scen + " --agents 1 --algo ilp"), 3);
    const std::string configs = file("c.json", "[{\"name\": ");
    EXPECT_EQ(exit_code("bench --maps " + std::string(QPMAPF_DATA_DIR) + "/empty-32-32.map --configs " + configs), 3);
}

} // namespace
} // namespace qpmapf
