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

#include "qpmapf/qubo/solvers.hpp"

#include "qpmapf/qubo/kernels.hpp"
#include "qpmapf/util/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

namespace qpmapf {

std::vector<QuboComponent> decompose(const QuboProblem& q)
{
    const int n = q.size();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (const auto& [ij, v] : q.couplings()) {
        const int a = find(ij.first), b = find(ij.second);
        if (a != b)
            parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }

    std::vector<QuboComponent> out;
    std::vector<int> slot(static_cast<std::size_t>(n), -1);
    std::vector<int> local(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        const auto root = static_cast<std::size_t>(find(v));
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(out.size());
            out.emplace_back();
        }
        QuboComponent& c = out[static_cast<std::size_t>(slot[root])];
        local[static_cast<std::size_t>(v)] = c.qubo.add_variable(q.variable(v));
        c.parent.push_back(v);
        c.qubo.add(local[static_cast<std::size_t>(v)], local[static_cast<std::size_t>(v)], q.diagonal(v));
    }
    for (const auto& [ij, v] : q.couplings()) {
        QuboComponent& c = out[static_cast<std::size_t>(slot[static_cast<std::size_t>(find(ij.first))])];
        c.qubo.add(local[static_cast<std::size_t>(ij.first)], local[static_cast<std::size_t>(ij.second)], v);
    }
    return out;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Symmetric couplings by row for sparse problems. Adding s * 0 never changes
// a field value, so the sparse and dense updates agree bit for bit.
struct SparseRows {
    std::vector<std::size_t> start;
    std::vector<std::uint32_t> column;
    std::vector<double> weight;

    explicit SparseRows(const QuboProblem& q)
    {
        const auto n = static_cast<std::size_t>(q.size());
        std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(n);
        for (const auto& [ij, v] : q.couplings()) {
            rows[static_cast<std::size_t>(ij.first)].emplace_back(static_cast<std::uint32_t>(ij.second), v);
            rows[static_cast<std::size_t>(ij.second)].emplace_back(static_cast<std::uint32_t>(ij.first), v);
        }
        start.push_back(0);
        for (auto& r : rows) {
            std::sort(r.begin(), r.end());
            for (const auto& [j, v] : r) {
                column.push_back(j);
                weight.push_back(v);
            }
            start.push_back(column.size());
        }
    }
};

// Dense rows pay off once a quarter of the matrix is non-zero.
bool prefer_dense(const QuboProblem& q)
{
    const auto n = static_cast<std::size_t>(q.size());
    return n <= 16 || 8 * q.couplings().size() >= n * n;
}

class Annealer {
  public:
    Annealer(const QuboProblem& q, const SaParams& params)
        : q_(q), params_(params), n_(static_cast<std::size_t>(q.size())), kernels_(kernels::active())
    {
        diag_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i)
            diag_[i] = q.diagonal(static_cast<int>(i));
        if (prefer_dense(q))
            dense_.emplace(q);
        else
            sparse_.emplace(q);
    }

    Sample run(std::uint64_t seed) const
    {
        std::mt19937_64 rng(seed);
        std::vector<std::uint8_t> z(n_);
        for (std::size_t i = 0; i < n_; i += 64) {
            const std::uint64_t bits = rng();
            for (std::size_t b = 0; b < 64 && i + b < n_; ++b)
                z[i + b] = static_cast<std::uint8_t>((bits >> b) & 1U);
        }
        std::vector<double> field = initial_field(z);

        const int sweeps = std::max(params_.sweeps, 0);
        const double ratio =
            sweeps > 1 ? std::pow(params_.beta_end / params_.beta_start, 1.0 / (sweeps - 1)) : 1.0;
        double beta = params_.beta_start;
        for (int s = 0; s < sweeps; ++s, beta *= ratio) {
            for (std::size_t i = 0; i < n_; ++i) {
                const double delta = (z[i] ? -1.0 : 1.0) * (diag_[i] + field[i]);
                if (delta <= 0.0 || uniform(rng) < std::exp(-beta * delta))
                    flip(z, field, i);
            }
        }
        if (params_.polish_slacks)
            for (std::size_t i = 0; i < n_; ++i)
                if (q_.variable(static_cast<int>(i)).kind == QuboVariable::Kind::Slack &&
                    (z[i] ? -1.0 : 1.0) * (diag_[i] + field[i]) < 0.0)
                    flip(z, field, i);

        Sample out{std::move(z), 0.0};
        out.energy = q_.energy(out.assignment);
        return out;
    }

  private:
    std::vector<double> initial_field(const std::vector<std::uint8_t>& z) const
    {
        std::vector<double> field(n_, 0.0);
        if (dense_) {
            const std::vector<double> zd(z.begin(), z.end());
            for (std::size_t i = 0; i < n_; ++i)
                field[i] = kernels_.dot(dense_->row(static_cast<int>(i)), zd.data(), n_);
        } else {
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t e = sparse_->start[i]; e < sparse_->start[i + 1]; ++e)
                    if (z[sparse_->column[e]])
                        field[i] += sparse_->weight[e];
        }
        return field;
    }

    void flip(std::vector<std::uint8_t>& z, std::vector<double>& field, std::size_t i) const
    {
        z[i] ^= 1U;
        const double s = z[i] ? 1.0 : -1.0;
        if (dense_) {
            kernels_.axpy(s, dense_->row(static_cast<int>(i)), field.data(), n_);
            return;
        }
        for (std::size_t e = sparse_->start[i]; e < sparse_->start[i + 1]; ++e)
            field[sparse_->column[e]] += s * sparse_->weight[e];
    }

    const QuboProblem& q_;
    const SaParams& params_;
    std::size_t n_;
    const kernels::KernelTable& kernels_;
    std::vector<double> diag_;
    std::optional<DenseQubo> dense_;
    std::optional<SparseRows> sparse_;
};

} // namespace

std::vector<Sample> solve_sa(const QuboProblem& q, const SaParams& params)
{
    if (q.size() < 1)
        throw QuboError("annealing needs at least one variable");
    const Annealer annealer(q, params);
    std::vector<Sample> samples(static_cast<std::size_t>(std::max(params.samples, 0)));
    parallel_for(samples.size(), [&](std::size_t s) { samples[s] = annealer.run(split_seed(params.seed, s)); });
    return samples;
}

Sample solve_exhaustive(const QuboProblem& q)
{
    const int n = q.size();
    if (n > kExhaustiveLimit)
        throw QuboError("exhaustive search refused: " + std::to_string(n) + " variables exceed the limit of " +
                        std::to_string(kExhaustiveLimit));
    const DenseQubo d(q);
    const kernels::KernelTable& k = kernels::active();
    const auto un = static_cast<std::size_t>(n);

    std::vector<std::uint8_t> z(un, 0);
    std::vector<double> field(un, 0.0);
    double e = 0.0;
    double best_e = 0.0;
    std::vector<std::uint8_t> best = z;
    const std::uint64_t states = std::uint64_t{1} << n;
    for (std::uint64_t g = 1; g < states; ++g) {
        const auto i = static_cast<std::size_t>(std::countr_zero(g));
        e += (z[i] ? -1.0 : 1.0) * (d.diag[i] + field[i]);
        z[i] ^= 1U;
        k.axpy(z[i] ? 1.0 : -1.0, d.row(static_cast<int>(i)), field.data(), un);
        if (e < best_e) {
            best_e = e;
            best = z;
        }
    }
    Sample out{std::move(best), 0.0};
    out.energy = q.energy(out.assignment);
    return out;
}

} // namespace qpmapf
