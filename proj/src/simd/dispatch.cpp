// Copyright 2026 The zeno-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "zeno/simd.hpp"

namespace zeno::simd {

LaneSpan LaneBuffer::lanes(std::size_t count) {
    if (count > size()) {
        throw std::out_of_range("LaneBuffer::lanes: count exceeds capacity");
    }
    return {std::span(re0_).first(count), std::span(im0_).first(count), std::span(re1_).first(count),
            std::span(im1_).first(count)};
}

void LaneBuffer::set(std::size_t j, const TwoLevelState &psi) {
    re0_[j] = psi.a0.real();
    im0_[j] = psi.a0.imag();
    re1_[j] = psi.a1.real();
    im1_[j] = psi.a1.imag();
}

void LaneBuffer::move_lane(std::size_t from, std::size_t to) {
    re0_[to] = re0_[from];
    im0_[to] = im0_[from];
    re1_[to] = re1_[from];
    im1_[to] = im1_[from];
}

std::string_view to_string(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    case Isa::neon:
        return "neon";
    }
    return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    if (name == "neon") return Isa::neon;
    return std::nullopt;
}

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(ZENO_HAVE_AVX2_KERNELS)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Isa::neon:
#if defined(ZENO_HAVE_NEON_KERNELS)
        return true;
#else
        return false;
#endif
    }
    return false;
}

const KernelTable &kernels(Isa isa) {
    if (!isa_available(isa)) {
        throw std::invalid_argument("SIMD kernels unavailable on this build or CPU: " + std::string(to_string(isa)));
    }
    switch (isa) {
#if defined(ZENO_HAVE_AVX2_KERNELS)
    case Isa::avx2:
        return detail::kAvx2Kernels;
#endif
#if defined(ZENO_HAVE_NEON_KERNELS)
    case Isa::neon:
        return detail::kNeonKernels;
#endif
    default:
        return detail::kScalarKernels;
    }
}

Isa detect_best_isa() {
    for (Isa isa : {Isa::avx2, Isa::neon}) {
        if (isa_available(isa)) {
            return isa;
        }
    }
    return Isa::scalar;
}

namespace {

// -1: no override.
std::atomic<int> g_preferred{-1};

Isa resolve_default() {
    if (const char *env = std::getenv("ZENO_SIMD")) {
        if (auto isa = parse_isa(env); isa && isa_available(*isa)) {
            return *isa;
        }
    }
    return detect_best_isa();
}

}  // namespace

void set_preferred_isa(std::optional<Isa> isa) {
    if (isa && !isa_available(*isa)) {
        throw std::invalid_argument("SIMD kernels unavailable on this build or CPU: " + std::string(to_string(*isa)));
    }
    g_preferred.store(isa ? static_cast<int>(*isa) : -1);
}

const KernelTable &active_kernels() {
    int preferred = g_preferred.load();
    if (preferred >= 0) {
        return kernels(static_cast<Isa>(preferred));
    }
    static const Isa fallback = resolve_default();
    return kernels(fallback);
}

}  // namespace zeno::simd
