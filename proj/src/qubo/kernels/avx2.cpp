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

// Built with -mavx2 only (no -mfma) so mul and add stay separate roundings.

#include "qpmapf/qubo/kernels.hpp"

#include <immintrin.h>

namespace qpmapf::kernels::avx2 {

void axpy(double a, const double* x, double* y, std::size_t n)
{
    const __m256d va = _mm256_set1_pd(a);
    const std::size_t body = n - n % 4;
    for (std::size_t i = 0; i < body; i += 4) {
        const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), p));
    }
    for (std::size_t i = body; i < n; ++i)
        y[i] += a * x[i];
}

double dot(const double* x, const double* y, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    const std::size_t body = n - n % 4;
    for (std::size_t i = 0; i < body; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    alignas(32) double s[4];
    _mm256_store_pd(s, acc);
    double r = (s[0] + s[1]) + (s[2] + s[3]);
    for (std::size_t i = body; i < n; ++i)
        r += x[i] * y[i];
    return r;
}

} // namespace qpmapf::kernels::avx2
