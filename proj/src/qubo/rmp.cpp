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

#include "qpmapf/qubo/rmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace qpmapf {

std::variant<RmpSolution, OneHotViolation> decode(const QuboProblem& q, std::span<const std::uint8_t> assignment,
                                                  const PathPool& pool, const ConstraintPool& rows, int horizon)
{
    if (static_cast<int>(assignment.size()) != q.size())
        throw QuboError("assignment length does not match the qubo dimension");
    std::vector<int> selection(static_cast<std::size_t>(pool.num_agents()), -1);
    std::vector<int> count(selection.size(), 0);
    for (int i = 0; i < q.size(); ++i) {
        const QuboVariable& v = q.variable(i);
        if (v.kind != QuboVariable::Kind::Path || !assignment[static_cast<std::size_t>(i)])
            continue;
        ++count[static_cast<std::size_t>(v.agent)];
        selection[static_cast<std::size_t>(v.agent)] = v.index;
    }
    OneHotViolation bad;
    for (std::size_t a = 0; a < count.size(); ++a)
        if (count[a] != 1)
            bad.agents.push_back(static_cast<AgentId>(a));
    if (!bad.agents.empty())
        return bad;
    return evaluate_selection(pool, rows, std::move(selection), horizon);
}

namespace {

struct Option {
    int k;
    double cost;
    const std::vector<int>* rows;
    double reduced = 0.0; // cost plus the multipliers of its rows
};

// Depth-first branch and bound over one group of agents. Bounds come from a
// Lagrangian relaxation whose multipliers are fixed after a root ascent.
class BranchAndBound {
  public:
    BranchAndBound(std::vector<std::vector<Option>> options, std::vector<int>& usage,
                   std::optional<std::chrono::steady_clock::time_point> deadline)
        : options_(std::move(options)), usage_(usage), deadline_(deadline), pick_(options_.size(), -1),
          open_(options_.size(), 1), owner_(usage.size(), -1), lambda_(usage.size(), 0.0), stamp_(usage.size(), 0)
    {
        for (const auto& opts : options_)
            for (const Option& o : opts) {
                integral_ = integral_ && o.cost == std::floor(o.cost);
                rows_.insert(rows_.end(), o.rows->begin(), o.rows->end());
            }
        std::sort(rows_.begin(), rows_.end());
        rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
        update_reduced();
    }

    // Known feasible pick (option k per agent) and its cost.
    void seed(double cost, std::vector<int> pick)
    {
        best_cost_ = cost;
        best_ = std::move(pick);
    }

    // Subgradient ascent on the group's Lagrangian dual, then drop options
    // that cannot beat the incumbent and order the rest by reduced cost.
    void prepare(int steps)
    {
        if (!rows_.empty())
            ascend(steps);
        double root = 0.0;
        std::vector<double> lowest(options_.size());
        for (std::size_t j = 0; j < options_.size(); ++j) {
            lowest[j] = std::numeric_limits<double>::infinity();
            for (const Option& o : options_[j])
                lowest[j] = std::min(lowest[j], o.reduced);
            root += lowest[j];
        }
        for (int r : rows_)
            root -= lambda_[static_cast<std::size_t>(r)];
        for (std::size_t j = 0; j < options_.size(); ++j) {
            auto& opts = options_[j];
            if (std::isfinite(best_cost_))
                opts.erase(std::remove_if(opts.begin(), opts.end(),
                                          [&](const Option& o) { return prune(root - lowest[j] + o.reduced); }),
                           opts.end());
            std::stable_sort(opts.begin(), opts.end(), [](const Option& a, const Option& b) {
                return a.reduced < b.reduced || (a.reduced == b.reduced && a.cost < b.cost);
            });
        }
    }

    // False if the deadline stopped the search.
    bool run()
    {
        dfs(0.0);
        return !timed_out_;
    }

    const std::optional<std::vector<int>>& best() const { return best_; }

  private:
    bool compatible(const Option& o) const
    {
        for (int r : *o.rows)
            if (usage_[static_cast<std::size_t>(r)] != 0)
                return false;
        return true;
    }

    void apply(const Option& o, int delta)
    {
        for (int r : *o.rows)
            usage_[static_cast<std::size_t>(r)] += delta;
    }

    void update_reduced()
    {
        for (auto& opts : options_)
            for (Option& o : opts) {
                o.reduced = o.cost;
                for (int r : *o.rows)
                    o.reduced += lambda_[static_cast<std::size_t>(r)];
            }
    }

    void ascend(int steps)
    {
        std::vector<double> best_lambda(lambda_.size(), 0.0);
        double best_value = -std::numeric_limits<double>::infinity();
        std::vector<double> g(lambda_.size(), 0.0);
        double theta = 1.0;
        int stale = 0;
        for (int k = 0; k < steps; ++k) {
            double value = 0.0;
            for (int r : rows_) {
                g[static_cast<std::size_t>(r)] = -1.0;
                value -= lambda_[static_cast<std::size_t>(r)];
            }
            for (const auto& opts : options_) {
                const Option* arg = &opts.front();
                for (const Option& o : opts)
                    if (o.reduced < arg->reduced)
                        arg = &o;
                value += arg->reduced;
                for (int r : *arg->rows)
                    g[static_cast<std::size_t>(r)] += 1.0;
            }
            if (value > best_value + 1e-9) {
                best_value = value;
                best_lambda = lambda_;
                stale = 0;
            } else if (++stale >= 10) {
                theta *= 0.5;
                stale = 0;
            }
            if (std::isfinite(best_cost_) && prune(best_value))
                break; // the incumbent is already proven optimal
            double norm = 0.0;
            for (int r : rows_) {
                const double gr = g[static_cast<std::size_t>(r)];
                if (gr > 0.0 || lambda_[static_cast<std::size_t>(r)] > 0.0)
                    norm += gr * gr;
            }
            if (norm == 0.0 || theta < 1e-4)
                break;
            // Polyak step toward the incumbent, or a guess above the bound.
            const double target =
                std::isfinite(best_cost_) ? best_cost_ : best_value + 1.0 + 0.05 * std::abs(best_value);
            const double eta = theta * std::max(target - value, 1e-3) / norm;
            for (int r : rows_) {
                double& l = lambda_[static_cast<std::size_t>(r)];
                l = std::max(0.0, l + eta * g[static_cast<std::size_t>(r)]);
            }
            update_reduced();
        }
        lambda_ = std::move(best_lambda);
        update_reduced();
    }

    // Lagrangian bound over the open agents given the rows already used;
    // -inf when some open agent has no compatible option left.
    double lagrangian_bound()
    {
        ++epoch_;
        double value = 0.0;
        for (std::size_t j = 0; j < options_.size(); ++j) {
            if (!open_[j])
                continue;
            double m = std::numeric_limits<double>::infinity();
            for (const Option& o : options_[j]) {
                if (!compatible(o))
                    continue;
                m = std::min(m, o.reduced);
                for (int r : *o.rows) {
                    std::uint64_t& st = stamp_[static_cast<std::size_t>(r)];
                    if (st != epoch_) {
                        st = epoch_;
                        value -= lambda_[static_cast<std::size_t>(r)];
                    }
                }
            }
            if (!std::isfinite(m))
                return -std::numeric_limits<double>::infinity();
            value += m;
        }
        return value;
    }

    // True if nothing with this lower bound can beat the incumbent.
    bool prune(double bound) const
    {
        if (integral_)
            bound = std::ceil(bound - 1e-6);
        return bound >= best_cost_ - 1e-9;
    }

    void dfs(double partial)
    {
        if (timed_out_)
            return;
        if (deadline_ && (++nodes_ & 255U) == 0 && std::chrono::steady_clock::now() > *deadline_) {
            timed_out_ = true;
            return;
        }
        const std::size_t n = options_.size();
        // Cheapest compatible option of every open agent. Their sum bounds
        // the node; if they do not clash with each other it is attained.
        std::vector<const Option*> cheapest(n, nullptr);
        double simple = partial;
        for (std::size_t j = 0; j < n; ++j) {
            if (!open_[j])
                continue;
            for (const Option& o : options_[j])
                if ((!cheapest[j] || o.cost < cheapest[j]->cost) && compatible(o))
                    cheapest[j] = &o;
            if (!cheapest[j])
                return;
            simple += cheapest[j]->cost;
        }
        if (prune(simple))
            return;

        std::vector<std::uint8_t> clashing(n, 0);
        std::vector<int> touched;
        for (std::size_t j = 0; j < n; ++j) {
            if (!open_[j])
                continue;
            for (int r : *cheapest[j]->rows) {
                int& o = owner_[static_cast<std::size_t>(r)];
                if (o < 0) {
                    o = static_cast<int>(j);
                    touched.push_back(r);
                } else if (o != static_cast<int>(j)) {
                    clashing[j] = clashing[static_cast<std::size_t>(o)] = 1;
                }
            }
        }
        for (int r : touched)
            owner_[static_cast<std::size_t>(r)] = -1;

        std::size_t branch = n;
        std::size_t fewest = std::numeric_limits<std::size_t>::max();
        for (std::size_t j = 0; j < n; ++j) {
            if (!clashing[j])
                continue;
            std::size_t c = 0;
            for (const Option& o : options_[j])
                c += compatible(o) ? 1 : 0;
            if (c < fewest) {
                fewest = c;
                branch = j;
            }
        }
        if (branch == n) {
            std::vector<int> pick = pick_;
            for (std::size_t j = 0; j < n; ++j)
                if (open_[j])
                    pick[j] = cheapest[j]->k;
            best_cost_ = simple;
            best_ = std::move(pick);
            return;
        }
        if (prune(partial + lagrangian_bound()))
            return;

        const double rest = simple - partial - cheapest[branch]->cost;
        open_[branch] = 0;
        for (const Option& o : options_[branch]) {
            if (prune(partial + o.cost + rest) || !compatible(o))
                continue;
            apply(o, 1);
            pick_[branch] = o.k;
            dfs(partial + o.cost);
            apply(o, -1);
            if (timed_out_)
                break;
        }
        pick_[branch] = -1;
        open_[branch] = 1;
    }

    std::vector<std::vector<Option>> options_;
    std::vector<int>& usage_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::vector<int> pick_;
    std::vector<std::uint8_t> open_;
    std::vector<int> owner_; // scratch for clash detection, all -1 between uses
    std::vector<double> lambda_;
    std::vector<int> rows_; // rows used by the group
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 0;
    bool integral_ = true;
    double best_cost_ = std::numeric_limits<double>::infinity();
    std::optional<std::vector<int>> best_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

} // namespace

ExactOutcome solve_rmp_exact(const PathPool& pool, const ConstraintPool& rows, int horizon,
                             const ExactOptions& options)
{
    const int n = pool.num_agents();
    for (AgentId a = 0; a < n; ++a)
        if (pool.count(a) == 0)
            throw InputError("agent " + std::to_string(a) + " has no pooled path");
    const Incidence d = build_incidence(pool, rows, horizon);

    // Agents linked through a shared row are solved together.
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    std::vector<int> row_owner(static_cast<std::size_t>(rows.size()), -1);
    for (int col = 0; col < pool.size(); ++col) {
        const int a = pool.agent_of(col);
        for (int r : d.rows_of[static_cast<std::size_t>(col)]) {
            int& owner = row_owner[static_cast<std::size_t>(r)];
            if (owner < 0) {
                owner = a;
            } else {
                const int x = find(owner), y = find(a);
                if (x != y)
                    parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
            }
        }
    }
    std::map<int, std::vector<AgentId>> groups;
    for (AgentId a = 0; a < n; ++a)
        groups[find(a)].push_back(a);

    ExactOutcome out;
    std::vector<int> selection(static_cast<std::size_t>(n), -1);
    std::vector<int> usage(static_cast<std::size_t>(rows.size()), 0);
    bool found_all = true;
    for (const auto& [root, agents] : groups) {
        std::vector<std::vector<Option>> opts;
        for (AgentId a : agents) {
            std::vector<Option> o;
            for (int k = 0; k < pool.count(a); ++k)
                o.push_back({k, pool.path(a, k).cost, &d.rows_of[static_cast<std::size_t>(pool.column(a, k))]});
            std::stable_sort(o.begin(), o.end(), [](const Option& x, const Option& y) { return x.cost < y.cost; });
            opts.push_back(std::move(o));
        }
        BranchAndBound bb(std::move(opts), usage, options.deadline);

        if (options.hint && options.hint->size() == static_cast<std::size_t>(n)) {
            std::vector<int> pick;
            double cost = 0.0;
            std::vector<int> load(usage.size(), 0);
            bool ok = true;
            for (AgentId a : agents) {
                const int k = (*options.hint)[static_cast<std::size_t>(a)];
                if (k < 0 || k >= pool.count(a)) {
                    ok = false;
                    break;
                }
                pick.push_back(k);
                cost += pool.path(a, k).cost;
                for (int r : d.rows_of[static_cast<std::size_t>(pool.column(a, k))])
                    if (++load[static_cast<std::size_t>(r)] > 1)
                        ok = false;
            }
            if (ok)
                bb.seed(cost, std::move(pick));
        }

        bb.prepare(1000);
        if (!bb.run())
            out.proven = false;
        if (!bb.best()) {
            found_all = false;
            if (out.proven)
                return out; // provably infeasible
            continue;
        }
        for (std::size_t i = 0; i < agents.size(); ++i)
            selection[static_cast<std::size_t>(agents[i])] = (*bb.best())[i];
    }
    if (found_all)
        out.solution = evaluate_selection(pool, rows, std::move(selection), horizon);
    return out;
}

QuboProblem build_rmp_qubo(const PathPool& pool, const ConstraintPool& rows, int horizon, Formulation f,
                           bool all_conflicts)
{
    QuboProblem base = build_base_objective(pool);
    const double w = constraint_penalty(pool);
    switch (f) {
    case Formulation::Slack:
        return build_slack_qubo(std::move(base), build_incidence(pool, rows, horizon), rows.size(), w);
    case Formulation::Half:
        return build_half_qubo(std::move(base), build_incidence(pool, rows, horizon), rows.size(), w);
    case Formulation::Conflict:
        if (all_conflicts)
            return build_conflict_qubo(std::move(base), build_conflict_graph(pool, horizon), w);
        return build_conflict_qubo(std::move(base), build_conflict_graph(pool, build_incidence(pool, rows, horizon)),
                                   w);
    }
    return base;
}

QuboRmpOutcome solve_rmp_qubo(const PathPool& pool, const ConstraintPool& rows, int horizon,
                              const QuboSolveParams& params)
{
    const QuboProblem q = build_rmp_qubo(pool, rows, horizon, params.formulation, params.all_conflicts);
    QuboRmpOutcome out;
    out.dimension = q.size();

    std::vector<QuboComponent> parts;
    if (params.decompose) {
        parts = decompose(q);
    } else {
        QuboComponent whole{q, std::vector<int>(static_cast<std::size_t>(q.size()))};
        whole.qubo.set_offset(0.0);
        std::iota(whole.parent.begin(), whole.parent.end(), 0);
        parts.push_back(std::move(whole));
    }

    std::vector<std::vector<Sample>> solved;
    for (std::size_t c = 0; c < parts.size(); ++c) {
        out.component_sizes.push_back(parts[c].qubo.size());
        if (params.backend == QuboBackend::Exhaustive) {
            solved.push_back({solve_exhaustive(parts[c].qubo)});
        } else {
            SaParams sa = params.sa;
            sa.seed = split_seed(params.sa.seed, c);
            solved.push_back(solve_sa(parts[c].qubo, sa));
        }
    }

    const std::size_t count = params.backend == QuboBackend::Exhaustive
                                  ? 1
                                  : static_cast<std::size_t>(std::max(params.sa.samples, 0));
    std::map<std::vector<int>, RmpSolution> seen;
    for (std::size_t s = 0; s < count; ++s) {
        Sample whole;
        whole.assignment.assign(static_cast<std::size_t>(q.size()), 0);
        for (std::size_t c = 0; c < parts.size(); ++c) {
            const Sample& part = solved[c][s];
            for (std::size_t k = 0; k < part.assignment.size(); ++k)
                whole.assignment[static_cast<std::size_t>(parts[c].parent[k])] = part.assignment[k];
        }
        whole.energy = q.energy(whole.assignment);

        // Many samples decode to the same selection; evaluate each once.
        std::vector<int> selection(static_cast<std::size_t>(pool.num_agents()), -1);
        bool one_hot = true;
        for (int i = 0; i < q.size() && one_hot; ++i) {
            const QuboVariable& v = q.variable(i);
            if (v.kind != QuboVariable::Kind::Path || !whole.assignment[static_cast<std::size_t>(i)])
                continue;
            int& slot = selection[static_cast<std::size_t>(v.agent)];
            one_hot = slot < 0;
            slot = v.index;
        }
        one_hot = one_hot && std::find(selection.begin(), selection.end(), -1) == selection.end();
        out.samples.push_back(std::move(whole));
        if (!one_hot) {
            ++out.infeasible;
            continue;
        }
        auto it = seen.find(selection);
        if (it == seen.end())
            it = seen.emplace(selection, evaluate_selection(pool, rows, selection, horizon)).first;
        const RmpSolution& sol = it->second;
        if (!sol.feasible) {
            ++out.infeasible;
            continue;
        }
        ++out.feasible;
        if (!out.best || sol.objective < out.best->objective)
            out.best = sol;
        if (sol.fully_feasible && (!out.best_full || sol.objective < out.best_full->objective))
            out.best_full = sol;
    }
    return out;
}

} // namespace qpmapf
