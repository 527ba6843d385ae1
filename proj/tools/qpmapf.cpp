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

// Command line front end: `solve` one instance, `bench` a suite.
// Exit codes: 0 feasible, 1 other failure, 2 infeasible, 3 parse error.

#include "qpmapf/driver/benchmark.hpp"
#include "qpmapf/driver/solver.hpp"
#include "qpmapf/io/movingai.hpp"
#include "qpmapf/qubo/rmp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>

namespace fs = std::filesystem;
using namespace qpmapf;

namespace {

constexpr int kExitFeasible = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitParse = 3;

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

struct SolveArgs {
    std::string map;
    std::string scen;
    int agents = 0;
    std::string algo = "qp";
    std::string backend = "exact";
    std::string formulation = "conflict";
    int max_pricing = 30;
    double time_limit = 180.0;
    std::uint64_t seed = 0;
    std::string out;
    std::string export_qubo;
    int samples = 1000;
    int sweeps = 1000;
    std::string pricing_mode = "per-agent";
    bool integral_stop = false;
};

int run_solve(const SolveArgs& a)
{
    const GridMap map = parse_map(read_text_file(a.map));
    const std::vector<ScenarioEntry> scen = parse_scen(read_text_file(a.scen));
    const ProblemInstance instance = load_instance(map, scen, a.agents);

    SolverConfig cfg;
    cfg.algorithm = parse_algorithm(a.algo);
    cfg.backend = parse_backend(a.backend);
    cfg.formulation = parse_formulation(a.formulation);
    cfg.max_pricing_steps = a.max_pricing;
    cfg.time_limit_seconds = a.time_limit;
    cfg.seed = a.seed;
    cfg.sa.samples = a.samples;
    cfg.sa.sweeps = a.sweeps;
    cfg.pricing_mode = parse_pricing_mode(a.pricing_mode);
    cfg.integral_stop = a.integral_stop;

    const RunResult res = run(instance, cfg);
    const RunReport& rep = res.report;

    if (!a.out.empty()) {
        const bool csv = fs::path(a.out).extension() == ".csv";
        write_text(a.out, write_report(rep, csv ? ReportFormat::Csv : ReportFormat::Json));
    }
    if (!a.export_qubo.empty() && res.pool.size() > 0) {
        fs::create_directories(a.export_qubo);
        const QuboProblem q = build_rmp_qubo(res.pool, res.rows, res.horizon, cfg.formulation,
                                             cfg.algorithm == Algorithm::Qp);
        std::ofstream out(fs::path(a.export_qubo) / "final.qubo");
        write_qubo(out, q);
    }

    std::cout << "status " << to_string(rep.status) << "\ncost " << rep.total_cost << "\npricing_steps "
              << rep.pricing_steps << "\nhorizon " << rep.horizon << "\nwall_time " << rep.wall_time << '\n';
    return rep.status == RunStatus::Infeasible ? kExitInfeasible : kExitFeasible;
}

// MovingAI layout: <stem>-random-<n>.scen next to the map or in a
// scen-random directory beside it.
std::vector<fs::path> find_scenarios(const fs::path& map_path)
{
    const std::string stem = map_path.stem().string();
    const std::regex pattern(std::regex_replace(stem, std::regex(R"([.^$|()\[\]{}*+?\\])"), R"(\$&)") +
                             R"(-random-(\d+)\.scen)");
    std::vector<std::pair<int, fs::path>> found;
    const fs::path dir = map_path.parent_path().empty() ? fs::path(".") : map_path.parent_path();
    for (const fs::path& d : {dir, dir / "scen-random", dir.parent_path() / "scen-random"}) {
        if (!fs::is_directory(d))
            continue;
        for (const auto& entry : fs::directory_iterator(d)) {
            std::smatch m;
            const std::string name = entry.path().filename().string();
            if (std::regex_match(name, m, pattern))
                found.emplace_back(std::stoi(m[1].str()), entry.path());
        }
        if (!found.empty())
            break;
    }
    std::sort(found.begin(), found.end());
    std::vector<fs::path> out;
    for (auto& [n, p] : found)
        out.push_back(std::move(p));
    return out;
}

struct BenchArgs {
    std::vector<std::string> maps;
    std::vector<int> agent_counts{20, 40, 60, 80, 100};
    std::string configs;
    int scenarios = 25;
    std::string out;
    std::string runs_out;
};

int run_bench(const BenchArgs& a)
{
    const std::vector<NamedConfig> configs = parse_configs(read_text_file(a.configs));
    std::vector<BenchmarkMap> maps;
    for (const std::string& m : a.maps) {
        BenchmarkMap bm;
        bm.name = fs::path(m).stem().string();
        bm.map = parse_map(read_text_file(m));
        for (const fs::path& s : find_scenarios(m)) {
            if (static_cast<int>(bm.scenarios.size()) >= a.scenarios)
                break;
            bm.scenarios.push_back(parse_scen(read_text_file(s.string())));
        }
        if (bm.scenarios.empty())
            throw std::runtime_error("no scenarios found for " + m);
        maps.push_back(std::move(bm));
    }
    const BenchmarkResult result = benchmark(maps, a.agent_counts, configs);
    if (a.out.empty())
        std::cout << benchmark_csv(result);
    else
        write_text(a.out, benchmark_csv(result));
    if (!a.runs_out.empty())
        write_text(a.runs_out, benchmark_runs_csv(result));
    return kExitFeasible;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"column generation MAPF solver with QUBO master problems"};
    app.require_subcommand(1);

    SolveArgs s;
    CLI::App* solve = app.add_subcommand("solve", "solve one instance");
    solve->add_option("--map", s.map, "MovingAI .map file")->required();
    solve->add_option("--scen", s.scen, "MovingAI .scen file")->required();
    solve->add_option("--agents", s.agents, "number of scenario entries to use")->required();
    solve->add_option("--algo", s.algo, "qp or qcp")->check(CLI::IsMember({"qp", "qcp"}));
    solve->add_option("--backend", s.backend, "exact, sa or exhaustive")
        ->check(CLI::IsMember({"exact", "sa", "exhaustive"}));
    solve->add_option("--formulation", s.formulation, "slack, half or conflict")
        ->check(CLI::IsMember({"slack", "half", "conflict"}));
    solve->add_option("--max-pricing", s.max_pricing, "pricing steps over the whole run");
    solve->add_option("--time-limit", s.time_limit, "seconds");
    solve->add_option("--seed", s.seed, "master seed");
    solve->add_option("--out", s.out, "report file, CSV if it ends in .csv else JSON");
    solve->add_option("--export-qubo", s.export_qubo, "directory for the final RMP QUBO");
    solve->add_option("--samples", s.samples, "SA samples per RMP solve");
    solve->add_option("--sweeps", s.sweeps, "SA sweeps per sample");
    solve->add_option("--pricing-mode", s.pricing_mode, "per-agent or global-argmin")
        ->check(CLI::IsMember({"per-agent", "global-argmin"}));
    solve->add_flag("--integral-stop", s.integral_stop, "stop pricing once no path can save a whole unit");

    BenchArgs b;
    CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
    bench->add_option("--maps", b.maps, "map files")->required()->delimiter(',');
    bench->add_option("--agent-counts", b.agent_counts, "agent counts")->delimiter(',');
    bench->add_option("--configs", b.configs, "JSON array of solver configs")->required();
    bench->add_option("--scenarios", b.scenarios, "scenario files per map");
    bench->add_option("--out", b.out, "aggregate CSV (default stdout)");
    bench->add_option("--runs-out", b.runs_out, "per-run CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (*solve)
            return run_solve(s);
        return run_bench(b);
    } catch (const ParseError& e) {
        std::cerr << "qpmapf: " << e.what() << '\n';
        return kExitParse;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "qpmapf: config: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "qpmapf: " << e.what() << '\n';
        return kExitFailure;
    }
}
