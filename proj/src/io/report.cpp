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

#include "qpmapf/io/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qpmapf {

namespace {

constexpr const char* kCsvHeader = "iteration,phase,incumbent,lagrangian,gap,paths,constraints,qubo_sizes,"
                                   "feasible_samples,infeasible_samples,status,total_cost,wall_time";

nlohmann::json real(double v)
{
    if (std::isfinite(v))
        return v;
    return nullptr;
}

double real(const nlohmann::json& j)
{
    if (j.is_null())
        return kNoIncumbent;
    return j.get<double>();
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_real(const std::string& s)
{
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size())
        throw std::runtime_error("bad number '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

} // namespace

std::string_view to_string(Phase p) { return p == Phase::Pricing ? "pricing" : "separation"; }

std::string_view to_string(RunStatus s)
{
    switch (s) {
    case RunStatus::OptimalCertified:
        return "optimal-certified";
    case RunStatus::Feasible:
        return "feasible";
    case RunStatus::TimeLimit:
        return "time-limit";
    case RunStatus::Infeasible:
        return "infeasible";
    }
    return "infeasible";
}

Phase parse_phase(std::string_view s)
{
    if (s == "pricing")
        return Phase::Pricing;
    if (s == "separation")
        return Phase::Separation;
    throw std::runtime_error("unknown phase '" + std::string(s) + "'");
}

RunStatus parse_status(std::string_view s)
{
    for (RunStatus r : {RunStatus::OptimalCertified, RunStatus::Feasible, RunStatus::TimeLimit, RunStatus::Infeasible})
        if (to_string(r) == s)
            return r;
    throw std::runtime_error("unknown status '" + std::string(s) + "'");
}

std::string write_report(const RunReport& report, ReportFormat format)
{
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["status"] = to_string(report.status);
        j["total_cost"] = real(report.total_cost);
        j["wall_time"] = report.wall_time;
        j["pricing_steps"] = report.pricing_steps;
        j["horizon"] = report.horizon;
        auto& its = j["iterations"] = nlohmann::ordered_json::array();
        for (const IterationRecord& r : report.iterations) {
            nlohmann::ordered_json o;
            o["iteration"] = r.iteration;
            o["phase"] = to_string(r.phase);
            o["incumbent"] = real(r.incumbent);
            o["lagrangian"] = real(r.lagrangian);
            o["gap"] = real(r.gap);
            o["paths"] = r.paths;
            o["constraints"] = r.constraints;
            o["qubo_sizes"] = r.qubo_sizes;
            o["feasible_samples"] = r.feasible_samples;
            o["infeasible_samples"] = r.infeasible_samples;
            its.push_back(std::move(o));
        }
        auto& paths = j["paths"] = nlohmann::ordered_json::array();
        for (const auto& p : report.paths) {
            auto cells = nlohmann::ordered_json::array();
            for (const Cell& c : p)
                cells.push_back({c.x, c.y});
            paths.push_back(std::move(cells));
        }
        return j.dump(2) + "\n";
    }

    std::string out = std::string(kCsvHeader) + "\n";
    for (const IterationRecord& r : report.iterations) {
        std::string sizes;
        for (std::size_t k = 0; k < r.qubo_sizes.size(); ++k)
            sizes += (k ? ";" : "") + std::to_string(r.qubo_sizes[k]);
        out += std::to_string(r.iteration) + ',' + std::string(to_string(r.phase)) + ',' + fmt(r.incumbent) + ',' +
               fmt(r.lagrangian) + ',' + fmt(r.gap) + ',' + std::to_string(r.paths) + ',' +
               std::to_string(r.constraints) + ',' + sizes + ',' + std::to_string(r.feasible_samples) + ',' +
               std::to_string(r.infeasible_samples) + ',' + std::string(to_string(report.status)) + ',' +
               fmt(report.total_cost) + ',' + fmt(report.wall_time) + '\n';
    }
    return out;
}

RunReport read_report(std::string_view text, ReportFormat format)
{
    RunReport report;
    if (format == ReportFormat::Json) {
        const auto j = nlohmann::json::parse(text);
        if (j.value("schema", 0) != 1)
            throw std::runtime_error("unsupported report schema");
        report.status = parse_status(j.at("status").get<std::string>());
        report.total_cost = real(j.at("total_cost"));
        report.wall_time = j.at("wall_time").get<double>();
        report.pricing_steps = j.value("pricing_steps", 0);
        report.horizon = j.value("horizon", 0);
        for (const auto& o : j.at("iterations")) {
            IterationRecord r;
            r.iteration = o.at("iteration").get<int>();
            r.phase = parse_phase(o.at("phase").get<std::string>());
            r.incumbent = real(o.at("incumbent"));
            r.lagrangian = real(o.at("lagrangian"));
            r.gap = real(o.at("gap"));
            r.paths = o.at("paths").get<int>();
            r.constraints = o.at("constraints").get<int>();
            r.qubo_sizes = o.at("qubo_sizes").get<std::vector<int>>();
            r.feasible_samples = o.at("feasible_samples").get<int>();
            r.infeasible_samples = o.at("infeasible_samples").get<int>();
            report.iterations.push_back(std::move(r));
        }
        if (j.contains("paths"))
            for (const auto& p : j.at("paths")) {
                std::vector<Cell> cells;
                for (const auto& c : p)
                    cells.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
                report.paths.push_back(std::move(cells));
            }
        return report;
    }

    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("unexpected CSV header");
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 13)
            throw std::runtime_error("CSV row has " + std::to_string(f.size()) + " fields, expected 13");
        IterationRecord r;
        r.iteration = std::stoi(f[0]);
        r.phase = parse_phase(f[1]);
        r.incumbent = parse_real(f[2]);
        r.lagrangian = parse_real(f[3]);
        r.gap = parse_real(f[4]);
        r.paths = std::stoi(f[5]);
        r.constraints = std::stoi(f[6]);
        if (!f[7].empty())
            for (const std::string& s : split(f[7], ';'))
                r.qubo_sizes.push_back(std::stoi(s));
        r.feasible_samples = std::stoi(f[8]);
        r.infeasible_samples = std::stoi(f[9]);
        if (first) {
            report.status = parse_status(f[10]);
            report.total_cost = parse_real(f[11]);
            report.wall_time = parse_real(f[12]);
            first = false;
        }
        report.iterations.push_back(std::move(r));
    }
    return report;
}

} // namespace qpmapf
