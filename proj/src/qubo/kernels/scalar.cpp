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

namespace qpmapf::kernels::scalar {

void axpy(double a, const double* x, double* y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] += a * x[i];
}

// Reference for the lane-blocked reduction order.
double dot(const double* x, const double* y, std::size_t n)
{
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t body = n - n % 4;
    for (std::size_t i = 0; i < body; i += 4)
        for (std::size_t l = 0; l < 4; ++l)
            s[l] += x[i + l] * y[i + l];
    double r = (s[0] + s[1]) + (s[2] + s[3]);
    for (std::size_t i = body; i < n; ++i)
        r += x[i] * y[i];
    return r;
}

} // namespace qpmapf::kernels::scalar
