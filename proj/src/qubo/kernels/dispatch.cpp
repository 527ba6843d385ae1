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

#include <atomic>
#include <stdexcept>

namespace qpmapf::kernels {

namespace {

constexpr KernelTable kScalar{scalar::axpy, scalar::dot};
#if defined(__x86_64__) || defined(__i386__)
constexpr KernelTable kAvx2{avx2::axpy, avx2::dot};
#endif
#if defined(__aarch64__)
constexpr KernelTable kNeon{neon::axpy, neon::dot};
#endif

std::atomic<const KernelTable*>& current()
{
    static std::atomic<const KernelTable*> ptr{&table(best_available())};
    return ptr;
}

std::atomic<Target>& current_target()
{
    static std::atomic<Target> t{best_available()};
    return t;
}

} // namespace

bool available(Target t)
{
    switch (t) {
    case Target::Scalar:
        return true;
    case Target::Avx2:
#if defined(__x86_64__) || defined(__i386__)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Target::Neon:
#if defined(__aarch64__)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Target best_available()
{
    if (available(Target::Avx2))
        return Target::Avx2;
    if (available(Target::Neon))
        return Target::Neon;
    return Target::Scalar;
}

const KernelTable& table(Target t)
{
    if (!available(t))
        throw std::invalid_argument("kernel target not available on this machine");
    switch (t) {
#if defined(__x86_64__) || defined(__i386__)
    case Target::Avx2:
        return kAvx2;
#endif
#if defined(__aarch64__)
    case Target::Neon:
        return kNeon;
#endif
    default:
        return kScalar;
    }
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

Target active_target() { return current_target().load(); }

void set_active(Target t)
{
    const KernelTable& k = table(t);
    current().store(&k, std::memory_order_release);
    current_target().store(t);
}

std::string_view name(Target t)
{
    switch (t) {
    case Target::Scalar:
        return "scalar";
    case Target::Avx2:
        return "avx2";
    case Target::Neon:
        return "neon";
    }
    return "unknown";
}

} // namespace qpmapf::kernels
