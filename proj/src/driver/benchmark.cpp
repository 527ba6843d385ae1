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

#include "qpmapf/driver/benchmark.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace qpmapf {

namespace {

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void mean_sd(const std::vector<double>& xs, double& mean, double& sd)
{
    mean = sd = 0.0;
    if (xs.empty())
        return;
    for (double x : xs)
        mean += x;
    mean /= static_cast<double>(xs.size());
    for (double x : xs)
        sd += (x - mean) * (x - mean);
    sd = std::sqrt(sd / static_cast<double>(xs.size()));
}

} // namespace

BenchmarkResult benchmark(const std::vector<BenchmarkMap>& maps, const std::vector<int>& agent_counts,
                          const std::vector<NamedConfig>& configs)
{
    BenchmarkResult result;
    for (const BenchmarkMap& m : maps)
        for (int k : agent_counts)
            for (const NamedConfig& c : configs) {
                BenchmarkRow row;
                row.map = m.name;
                row.agents = k;
                row.config = c.name;
                std::vector<double> costs, gaps;
                for (std::size_t s = 0; s < m.scenarios.size(); ++s) {
                    BenchmarkRun r;
                    r.map = m.name;
                    r.scenario = static_cast<int>(s);
                    r.agents = k;
                    r.config = c.name;
                    try {
                        const ProblemInstance inst = load_instance(m.map, m.scenarios[s], k);
                        const RunResult res = run(inst, c.config);
                        r.status = res.report.status;
                        r.cost = res.report.total_cost;
                        if (!res.report.iterations.empty())
                            r.gap = res.report.iterations.back().gap;
                        r.wall_time = res.report.wall_time;
                    } catch (const std::exception& e) {
                        r.error = e.what();
                    }
                    ++row.runs;
                    if (r.error.empty() && r.status != RunStatus::Infeasible) {
                        ++row.solved;
                        costs.push_back(r.cost);
                        if (std::isfinite(r.gap))
                            gaps.push_back(r.gap);
                    }
                    if (r.status == RunStatus::OptimalCertified)
                        ++row.certified;
                    result.runs.push_back(std::move(r));
                }
                mean_sd(costs, row.mean_cost, row.sd_cost);
                mean_sd(gaps, row.mean_gap, row.sd_gap);
                result.rows.push_back(std::move(row));
            }
    return result;
}

std::string benchmark_csv(const BenchmarkResult& result)
{
    std::string out = "map,agents,config,runs,solved,certified,mean_cost,sd_cost,mean_gap,sd_gap\n";
    for (const BenchmarkRow& r : result.rows)
        out += r.map + ',' + std::to_string(r.agents) + ',' + r.config + ',' + std::to_string(r.runs) + ',' +
               std::to_string(r.solved) + ',' + std::to_string(r.certified) + ',' + fmt(r.mean_cost) + ',' +
               fmt(r.sd_cost) + ',' + fmt(r.mean_gap) + ',' + fmt(r.sd_gap) + '\n';
    return out;
}

std::string benchmark_runs_csv(const BenchmarkResult& result)
{
    std::string out = "map,scenario,agents,config,status,cost,gap,wall_time,error\n";
    for (const BenchmarkRun& r : result.runs) {
        std::string err = r.error;
        for (char& ch : err)
            if (ch == ',' || ch == '\n')
                ch = ' ';
        out += r.map + ',' + std::to_string(r.scenario) + ',' + std::to_string(r.agents) + ',' + r.config + ',' +
               std::string(to_string(r.status)) + ',' + fmt(r.cost) + ',' + fmt(r.gap) + ',' + fmt(r.wall_time) +
               ',' + err + '\n';
    }
    return out;
}

std::vector<NamedConfig> parse_configs(std::string_view json_text)
{
    const auto j = nlohmann::json::parse(json_text);
    if (!j.is_array())
        throw std::invalid_argument("config file must hold a JSON array");
    std::vector<NamedConfig> out;
    for (const auto& o : j) {
        NamedConfig c;
        SolverConfig& s = c.config;
        s.algorithm = parse_algorithm(o.value("algo", std::string(to_string(s.algorithm))));
        s.backend = parse_backend(o.value("backend", std::string(to_string(s.backend))));
        s.formulation = parse_formulation(o.value("formulation", std::string(to_string(s.formulation))));
        s.max_pricing_steps = o.value("max_pricing", s.max_pricing_steps);
        s.time_limit_seconds = o.value("time_limit", s.time_limit_seconds);
        s.seed = o.value("seed", s.seed);
        s.sa.samples = o.value("samples", s.sa.samples);
        s.sa.sweeps = o.value("sweeps", s.sa.sweeps);
        s.decompose = o.value("decompose", s.decompose);
        s.integral_stop = o.value("integral_stop", s.integral_stop);
        if (o.contains("pricing_mode"))
            s.pricing_mode = parse_pricing_mode(o.at("pricing_mode").get<std::string>());
        c.name = o.value("name", std::string(to_string(s.algorithm)) + "-" + std::string(to_string(s.backend)) +
                                     "-" + std::string(to_string(s.formulation)));
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace qpmapf
