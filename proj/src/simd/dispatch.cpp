// Copyright 2026 The retinasim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "retinasim/simd/kernels.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace retinasim::simd {

extern const KernelTable kScalarKernels;
#if defined(RETINASIM_HAVE_AVX2)
extern const KernelTable kAvx2Kernels;
#endif
#if defined(RETINASIM_HAVE_NEON)
extern const KernelTable kNeonKernels;
#endif

namespace {

bool cpu_supports(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(RETINASIM_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::neon:
#if defined(RETINASIM_HAVE_NEON)
            return true; // baseline on aarch64
#else
            return false;
#endif
    }
    return false;
}

Isa best_isa() {
    if (cpu_supports(Isa::avx2)) return Isa::avx2;
    if (cpu_supports(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

Isa initial_isa() {
    if (const char* env = std::getenv("RETINASIM_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        for (Isa isa : {Isa::avx2, Isa::neon}) {
            if (std::strcmp(env, isa_name(isa)) == 0) {
                if (cpu_supports(isa)) return isa;
                std::fprintf(stderr,
                             "retinasim: RETINASIM_SIMD=%s unavailable, using %s\n",
                             env, isa_name(best_isa()));
                return best_isa();
            }
        }
        std::fprintf(stderr, "retinasim: unknown RETINASIM_SIMD value '%s'\n", env);
    }
    return best_isa();
}

std::atomic<const KernelTable*> g_active{nullptr};
std::atomic<Isa> g_active_isa{Isa::scalar};

void ensure_initialized() {
    if (g_active.load(std::memory_order_acquire) == nullptr) {
        const Isa isa = initial_isa();
        g_active_isa.store(isa, std::memory_order_relaxed);
        g_active.store(kernels_for(isa), std::memory_order_release);
    }
}

} // namespace

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "scalar";
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out{Isa::scalar};
    if (cpu_supports(Isa::avx2)) out.push_back(Isa::avx2);
    if (cpu_supports(Isa::neon)) out.push_back(Isa::neon);
    return out;
}

const KernelTable* kernels_for(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return &kScalarKernels;
        case Isa::avx2:
#if defined(RETINASIM_HAVE_AVX2)
            return cpu_supports(Isa::avx2) ? &kAvx2Kernels : nullptr;
#else
            return nullptr;
#endif
        case Isa::neon:
#if defined(RETINASIM_HAVE_NEON)
            return &kNeonKernels;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

const KernelTable& active_kernels() {
    ensure_initialized();
    return *g_active.load(std::memory_order_acquire);
}

Isa active_isa() {
    ensure_initialized();
    return g_active_isa.load(std::memory_order_relaxed);
}

bool set_active_isa(Isa isa) {
    const KernelTable* table = kernels_for(isa);
    if (table == nullptr)
        return false;
    g_active_isa.store(isa, std::memory_order_relaxed);
    g_active.store(table, std::memory_order_release);
    return true;
}

} // namespace retinasim::simd
