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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qpmapf {

class QuboError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// What a binary variable stands for: path `index` of `agent`, or the slack
// of constraint row `index`.
struct QuboVariable {
    enum class Kind : std::uint8_t { Path, Slack };
    Kind kind = Kind::Path;
    std::int32_t agent = -1;
    std::int32_t index = 0;
    friend bool operator==(const QuboVariable&, const QuboVariable&) = default;
};

// E(z) = sum_i Q_ii z_i + sum_{i<j} Q_ij z_i z_j + offset, upper-triangular
// storage: coefficient(i, j) for i < j is the full weight of z_i z_j.
class QuboProblem {
  public:
    QuboProblem() = default;

    int size() const { return static_cast<int>(vars_.size()); }
    int add_variable(QuboVariable v);
    const QuboVariable& variable(int i) const { return vars_[static_cast<std::size_t>(i)]; }
    std::span<const QuboVariable> variables() const { return vars_; }

    // Accumulates; (i, j) and (j, i) address the same entry. Throws QuboError
    // on a non-finite value or an index out of range.
    void add(int i, int j, double value);
    double coefficient(int i, int j) const;
    double diagonal(int i) const { return diag_[static_cast<std::size_t>(i)]; }
    // Non-zero upper entries, ordered by (i, j).
    const std::map<std::pair<int, int>, double>& couplings() const { return upper_; }

    double offset() const { return offset_; }
    void add_offset(double v) { offset_ += v; }
    void set_offset(double v) { offset_ = v; }

    double energy(std::span<const std::uint8_t> z) const;

  private:
    std::vector<QuboVariable> vars_;
    std::vector<double> diag_;
    std::map<std::pair<int, int>, double> upper_;
    double offset_ = 0.0;
};

// Symmetric dense copy for the solvers: `coupling` is n x n row-major with a
// zero diagonal and W_ij = W_ji = Q_ij.
struct DenseQubo {
    int n = 0;
    std::vector<double> diag;
    std::vector<double> coupling;
    double offset = 0.0;

    explicit DenseQubo(const QuboProblem& q);
    const double* row(int i) const { return coupling.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n); }
};

// Plain sparse-triplet text: "n <dim> offset <real>", then "i j value" per
// non-zero entry with i <= j, values printed with %.17g.
void write_qubo(std::ostream& out, const QuboProblem& q);
// Variables come back as anonymous paths (agent -1). Throws QuboError.
QuboProblem read_qubo(std::istream& in);

} // namespace qpmapf
