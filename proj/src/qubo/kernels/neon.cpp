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

#include "qpmapf/qubo/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace qpmapf::kernels::neon {

// vmulq + vaddq, never vfmaq: results must match the scalar reference.
void axpy(double a, const double* x, double* y, std::size_t n)
{
    const float64x2_t va = vdupq_n_f64(a);
    const std::size_t body = n - n % 2;
    for (std::size_t i = 0; i < body; i += 2)
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
    for (std::size_t i = body; i < n; ++i)
        y[i] += a * x[i];
}

// Lanes {0,1} and {2,3} of each block of four go to separate accumulators,
// matching the four partial sums of the scalar reference.
double dot(const double* x, const double* y, std::size_t n)
{
    float64x2_t lo = vdupq_n_f64(0.0);
    float64x2_t hi = vdupq_n_f64(0.0);
    const std::size_t body = n - n % 4;
    for (std::size_t i = 0; i < body; i += 4) {
        lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
        hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
    }
    double r = (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) + (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
    for (std::size_t i = body; i < n; ++i)
        r += x[i] * y[i];
    return r;
}

} // namespace qpmapf::kernels::neon

#endif
