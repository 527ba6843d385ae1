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

#include <cstddef>
#include <string_view>

// Dense vector kernels behind the annealer's local-field updates. Every
// variant produces bit-identical results: no fused multiply-add, and dot
// products always reduce over four interleaved partial sums combined as
// (s0 + s1) + (s2 + s3), then the tail in order.
namespace qpmapf::kernels {

enum class Target { Scalar, Avx2, Neon };

struct KernelTable {
    // y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
};

namespace scalar {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
} // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
namespace avx2 {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
} // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
} // namespace neon
#endif

// Compiled in and supported by this CPU.
bool available(Target t);
Target best_available();
const KernelTable& table(Target t);

// Kernels used by the solvers. Defaults to best_available(); tests switch it
// to compare variants. Throws std::invalid_argument for an unavailable target.
const KernelTable& active();
Target active_target();
void set_active(Target t);

std::string_view name(Target t);

} // namespace qpmapf::kernels
