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

#include "qpmapf/driver/solver.hpp"

#include "qpmapf/search/astar.hpp"
#include "qpmapf/search/prioritized.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qpmapf {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Start {
    int horizon = 0;
    std::optional<std::vector<TimedPath>> ppp;
};

int moves_of(const TimedPath& p) { return p.arrival_time() - p.start_time; }

Start initialize(const ProblemInstance& instance, const SolverConfig& cfg)
{
    const bool fixed = cfg.horizon_policy == HorizonPolicy::Fixed;
    ProblemInstance probe = instance;
    int horizon = fixed ? instance.horizon : horizon_floor(instance);
    const int enlargements = fixed ? 0 : cfg.horizon_enlargements;
    for (int e = 0; e <= enlargements; ++e) {
        probe.horizon = horizon;
        for (int s = 0; s < cfg.ppp_attempts; ++s) {
            auto paths = ppp_initialize(probe, split_seed(cfg.seed, static_cast<std::uint64_t>(s)));
            if (!paths)
                continue;
            if (fixed)
                return {horizon, std::move(paths)};
            int longest = 0;
            for (const TimedPath& p : *paths)
                longest = std::max(longest, moves_of(p));
            // PPP paths stay conflict-free under any horizon past their arrivals.
            return {default_horizon(instance, longest), std::move(paths)};
        }
        if (e < enlargements)
            horizon = static_cast<int>(std::ceil(horizon * cfg.horizon_growth));
    }
    return {horizon, std::nullopt};
}

struct RmpStep {
    std::optional<RmpSolution> solution; // feasible for the active rows
    std::optional<RmpSolution> full;     // best conflict-free selection met
    std::vector<int> sizes;
    int feasible = 0;
    int infeasible = 0;
    bool timed_out = false;
};

RmpStep solve_rmp(const PathPool& pool, const ConstraintPool& rows, int horizon, const SolverConfig& cfg,
                  const std::optional<RmpSolution>& incumbent, Clock::time_point deadline, std::uint64_t call)
{
    RmpStep step;
    if (cfg.backend == RmpBackend::Exact) {
        ExactOptions opts;
        if (incumbent)
            opts.hint = incumbent->selection;
        opts.deadline = deadline;
        ExactOutcome ex = solve_rmp_exact(pool, rows, horizon, opts);
        step.timed_out = !ex.proven;
        step.solution = ex.solution;
        if (ex.solution && ex.solution->fully_feasible)
            step.full = ex.solution;
        return step;
    }
    QuboSolveParams qp;
    qp.formulation = cfg.formulation;
    qp.backend = cfg.backend == RmpBackend::Sa ? QuboBackend::Sa : QuboBackend::Exhaustive;
    qp.sa = cfg.sa;
    qp.sa.seed = split_seed(cfg.sa.seed ^ cfg.seed, call);
    qp.decompose = cfg.decompose;
    qp.all_conflicts = false;
    QuboRmpOutcome q = solve_rmp_qubo(pool, rows, horizon, qp);
    step.solution = q.best;
    step.full = q.best_full;
    step.sizes = q.component_sizes;
    step.feasible = q.feasible;
    step.infeasible = q.infeasible;
    step.timed_out = Clock::now() >= deadline;
    return step;
}

class Run {
  public:
    Run(const ProblemInstance& instance, const SolverConfig& cfg)
        : cfg_(cfg), begin_(Clock::now()),
          deadline_(begin_ + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(std::max(cfg.time_limit_seconds, 0.0)))),
          instance_(instance)
    {
    }

    RunResult go()
    {
        Start start = initialize(instance_, cfg_);
        instance_.horizon = start.horizon;
        const int n = instance_.num_agents();
        pool_ = PathPool(n);
        if (start.ppp) {
            for (TimedPath& p : *start.ppp)
                pool_.add(std::move(p));
            incumbent_ = evaluate_selection(pool_, rows_, std::vector<int>(static_cast<std::size_t>(n), 0),
                                            instance_.horizon);
        } else {
            // No conflict-free start: price from independent shortest paths
            // with no incumbent until the RMP finds one.
            const TimeExpandedGraph graph(instance_.map, instance_.horizon);
            const WeightOverlay none(instance_.map.size(), instance_.horizon);
            for (const Agent& a : instance_.agents) {
                auto p = astar_shortest(graph, a, none);
                if (!p)
                    return finish();
                pool_.add(std::move(*p));
            }
        }

        if (cfg_.algorithm == Algorithm::Qp)
            qp_loop();
        else
            qcp_loop();
        return finish();
    }

  private:
    bool out_of_time() const { return Clock::now() >= deadline_; }

    double v_hat() const
    {
        double v = incumbent_ ? incumbent_->objective : kInf;
        if (current_ && current_->feasible)
            v = std::min(v, current_->objective);
        return v;
    }

    void consider(const std::optional<RmpSolution>& s)
    {
        if (s && s->fully_feasible && (!incumbent_ || s->objective < incumbent_->objective))
            incumbent_ = s;
    }

    // Returns false when the time limit cut the solve.
    bool solve()
    {
        if (cfg_.algorithm == Algorithm::Qp)
            for (const ConstraintRow& r : overlap_rows(pool_, instance_.horizon))
                rows_.add(r);
        RmpStep step = solve_rmp(pool_, rows_, instance_.horizon, cfg_, incumbent_, deadline_, rmp_calls_++);
        current_ = step.solution;
        consider(step.full);
        last_sizes_ = std::move(step.sizes);
        last_feasible_ = step.feasible;
        last_infeasible_ = step.infeasible;
        if (step.timed_out)
            timed_out_ = true;
        return !step.timed_out;
    }

    // One ascent + pricing round. Returns the outcome after logging it.
    PricingOutcome price()
    {
        const Incidence d = build_incidence(pool_, rows_, instance_.horizon);
        const DualAscentResult asc = dual_ascent(pool_, d, rows_.size(), rows_.duals(), cfg_.dual);
        rows_.set_duals(asc.lambda);
        const double vh = v_hat();
        PricingOutcome pr = pricing_round(instance_, pool_, rows_, vh, cfg_.pricing_mode,
                                        cfg_.integral_stop ? 1.0 : 0.0);
        // A step is a round that grew the pool; the closing check is free.
        if (pr.fired && !pr.added.empty())
            ++steps_;
        last_lagrangian_ = pr.lagrangian;
        log(Phase::Pricing, vh, pr.lagrangian);
        if (cfg_.observer)
            cfg_.observer(PricingObservation{instance_, pool_, rows_, pr, vh});
        return pr;
    }

    void log(Phase phase, double vh, double lagrangian)
    {
        IterationRecord r;
        r.iteration = static_cast<int>(report_.iterations.size());
        r.phase = phase;
        r.incumbent = vh;
        r.lagrangian = lagrangian;
        r.gap = vh - lagrangian;
        r.paths = pool_.size();
        r.constraints = rows_.size();
        r.qubo_sizes = last_sizes_;
        r.feasible_samples = last_feasible_;
        r.infeasible_samples = last_infeasible_;
        report_.iterations.push_back(std::move(r));
    }

    // Inner loop: RMP, ascent, pricing until the criterion stops firing.
    // Returns true if it ended because the criterion did not fire.
    bool inner_loop()
    {
        for (;;) {
            if (!solve())
                return false;
            const PricingOutcome pr = price();
            if (!pr.fired || pr.added.empty())
                return !pr.fired;
            if (steps_ >= cfg_.max_pricing_steps) {
                capped_ = true;
                solve();
                return false;
            }
            if (out_of_time()) {
                timed_out_ = true;
                return false;
            }
        }
    }

    void qp_loop() { certified_ = inner_loop() && cfg_.backend == RmpBackend::Exact; }

    void qcp_loop()
    {
        for (int outer = 0; outer < cfg_.max_outer_rounds; ++outer) {
            const bool settled = inner_loop();
            if (timed_out_ || capped_)
                return;
            // Separate on the RMP solution, or the incumbent if the RMP
            // solver found nothing feasible.
            const std::optional<RmpSolution>& z = current_ ? current_ : incumbent_;
            if (!z)
                return;
            const auto added = separate(*z, pool_, rows_, instance_.horizon);
            log(Phase::Separation, v_hat(), last_lagrangian_);
            if (added.empty()) {
                certified_ = settled && z->fully_feasible && cfg_.backend == RmpBackend::Exact;
                return;
            }
            if (out_of_time()) {
                timed_out_ = true;
                return;
            }
        }
    }

    RunResult finish()
    {
        report_.horizon = instance_.horizon;
        report_.pricing_steps = steps_;
        if (!incumbent_)
            report_.status = RunStatus::Infeasible;
        else if (timed_out_)
            report_.status = RunStatus::TimeLimit;
        else if (certified_)
            report_.status = RunStatus::OptimalCertified;
        else
            report_.status = RunStatus::Feasible;

        RunResult res;
        if (incumbent_) {
            report_.total_cost = incumbent_->objective;
            res.paths = incumbent_->paths(pool_);
            for (const TimedPath& p : res.paths) {
                std::vector<Cell> cells;
                for (CellId c : p.steps)
                    cells.push_back(instance_.map.coord(c));
                report_.paths.push_back(std::move(cells));
            }
        }
        report_.wall_time = std::chrono::duration<double>(Clock::now() - begin_).count();
        res.report = std::move(report_);
        res.horizon = instance_.horizon;
        res.pool = std::move(pool_);
        res.rows = std::move(rows_);
        return res;
    }

    const SolverConfig& cfg_;
    Clock::time_point begin_;
    Clock::time_point deadline_;
    ProblemInstance instance_;
    PathPool pool_;
    ConstraintPool rows_;
    std::optional<RmpSolution> incumbent_; // best conflict-free selection
    std::optional<RmpSolution> current_;   // latest RMP solution
    RunReport report_;
    std::vector<int> last_sizes_;
    int last_feasible_ = 0;
    int last_infeasible_ = 0;
    double last_lagrangian_ = 0.0;
    std::uint64_t rmp_calls_ = 0;
    int steps_ = 0;
    bool certified_ = false;
    bool timed_out_ = false;
    bool capped_ = false;
};

} // namespace

RunResult run(const ProblemInstance& instance, const SolverConfig& config)
{
    instance.validate();
    return Run(instance, config).go();
}

std::vector<double> relative_metric(const std::vector<std::optional<double>>& values)
{
    std::vector<double> out(values.size(), 0.0);
    double best = kInf, worst = -kInf;
    for (const auto& v : values)
        if (v) {
            best = std::min(best, *v);
            worst = std::max(worst, *v);
        }
    if (!(worst > best)) {
        // All present values equal: missing ones are "worst" = that value.
        return out;
    }
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = ((values[i] ? *values[i] : worst) - best) / (worst - best);
    return out;
}

std::string_view to_string(Algorithm a) { return a == Algorithm::Qp ? "qp" : "qcp"; }

std::string_view to_string(RmpBackend b)
{
    switch (b) {
    case RmpBackend::Exact:
        return "exact";
    case RmpBackend::Sa:
        return "sa";
    case RmpBackend::Exhaustive:
        return "exhaustive";
    }
    return "exact";
}

std::string_view to_string(Formulation f)
{
    switch (f) {
    case Formulation::Slack:
        return "slack";
    case Formulation::Half:
        return "half";
    case Formulation::Conflict:
        return "conflict";
    }
    return "conflict";
}

Algorithm parse_algorithm(std::string_view s)
{
    if (s == "qp")
        return Algorithm::Qp;
    if (s == "qcp")
        return Algorithm::Qcp;
    throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

RmpBackend parse_backend(std::string_view s)
{
    for (RmpBackend b : {RmpBackend::Exact, RmpBackend::Sa, RmpBackend::Exhaustive})
        if (to_string(b) == s)
            return b;
    throw std::invalid_argument("unknown backend '" + std::string(s) + "'");
}

Formulation parse_formulation(std::string_view s)
{
    for (Formulation f : {Formulation::Slack, Formulation::Half, Formulation::Conflict})
        if (to_string(f) == s)
            return f;
    throw std::invalid_argument("unknown formulation '" + std::string(s) + "'");
}

PricingMode parse_pricing_mode(std::string_view s)
{
    if (s == "per-agent")
        return PricingMode::PerAgent;
    if (s == "global-argmin")
        return PricingMode::GlobalArgmin;
    throw std::invalid_argument("unknown pricing mode '" + std::string(s) + "'");
}

} // namespace qpmapf
