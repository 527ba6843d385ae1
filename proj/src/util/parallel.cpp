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

#include "qpmapf/util/parallel.hpp"

#include <cstdlib>
#include <string>

namespace qpmapf {

int thread_count()
{
    static const int count = [] {
        const char* env = std::getenv("QPMAPF_THREADS");
        if (env == nullptr)
            return 1;
        try {
            const int n = std::stoi(env);
            return n > 0 ? n : 1;
        } catch (...) {
            return 1;
        }
    }();
    return count;
}

} // namespace qpmapf
