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

#include "qpmapf/qubo/qubo.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace qpmapf {

int QuboProblem::add_variable(QuboVariable v)
{
    vars_.push_back(v);
    diag_.push_back(0.0);
    return size() - 1;
}

void QuboProblem::add(int i, int j, double value)
{
    if (i < 0 || j < 0 || i >= size() || j >= size())
        throw QuboError("qubo index out of range");
    if (!std::isfinite(value))
        throw QuboError("qubo coefficient must be finite");
    if (value == 0.0)
        return;
    if (i == j) {
        diag_[static_cast<std::size_t>(i)] += value;
        return;
    }
    if (i > j)
        std::swap(i, j);
    auto [it, inserted] = upper_.try_emplace({i, j}, value);
    if (!inserted) {
        it->second += value;
        if (it->second == 0.0)
            upper_.erase(it);
    }
}

double QuboProblem::coefficient(int i, int j) const
{
    if (i == j)
        return diag_[static_cast<std::size_t>(i)];
    if (i > j)
        std::swap(i, j);
    const auto it = upper_.find({i, j});
    return it == upper_.end() ? 0.0 : it->second;
}

double QuboProblem::energy(std::span<const std::uint8_t> z) const
{
    if (static_cast<int>(z.size()) != size())
        throw QuboError("assignment length does not match the qubo dimension");
    double e = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i])
            e += diag_[i];
    for (const auto& [ij, v] : upper_)
        if (z[static_cast<std::size_t>(ij.first)] && z[static_cast<std::size_t>(ij.second)])
            e += v;
    return e + offset_;
}

DenseQubo::DenseQubo(const QuboProblem& q)
    : n(q.size()), diag(static_cast<std::size_t>(n)),
      coupling(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0), offset(q.offset())
{
    for (int i = 0; i < n; ++i)
        diag[static_cast<std::size_t>(i)] = q.diagonal(i);
    const auto stride = static_cast<std::size_t>(n);
    for (const auto& [ij, v] : q.couplings()) {
        const auto i = static_cast<std::size_t>(ij.first);
        const auto j = static_cast<std::size_t>(ij.second);
        coupling[i * stride + j] = v;
        coupling[j * stride + i] = v;
    }
}

namespace {

std::string format_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_qubo(std::ostream& out, const QuboProblem& q)
{
    out << "n " << q.size() << " offset " << format_real(q.offset()) << '\n';
    // Row-major over i: diagonal first, then the couplings of row i.
    auto it = q.couplings().begin();
    for (int i = 0; i < q.size(); ++i) {
        if (q.diagonal(i) != 0.0)
            out << i << ' ' << i << ' ' << format_real(q.diagonal(i)) << '\n';
        for (; it != q.couplings().end() && it->first.first == i; ++it)
            out << i << ' ' << it->first.second << ' ' << format_real(it->second) << '\n';
    }
}

QuboProblem read_qubo(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw QuboError("empty qubo file");
    std::istringstream head(line);
    std::string n_tag, off_tag;
    int n = -1;
    double offset = 0.0;
    if (!(head >> n_tag >> n >> off_tag >> offset) || n_tag != "n" || off_tag != "offset" || n < 0)
        throw QuboError("bad qubo header: " + line);

    QuboProblem q;
    for (int i = 0; i < n; ++i)
        q.add_variable({QuboVariable::Kind::Path, -1, i});
    q.set_offset(offset);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream row(line);
        int i = 0, j = 0;
        double v = 0.0;
        if (!(row >> i >> j >> v))
            throw QuboError("bad qubo entry on line " + std::to_string(lineno));
        q.add(i, j, v);
    }
    return q;
}

} // namespace qpmapf
