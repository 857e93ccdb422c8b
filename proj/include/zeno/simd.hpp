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

#ifndef ZENO_SIMD_HPP
#define ZENO_SIMD_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "zeno/qmath.hpp"

namespace zeno::simd {

/// Structure-of-arrays batch of two-level states; lane j is
/// (re0[j] + i im0[j], re1[j] + i im1[j]).
struct LaneSpan {
    std::span<double> re0, im0, re1, im1;
    std::size_t size() const { return re0.size(); }
};

struct ConstLaneSpan {
    std::span<const double> re0, im0, re1, im1;
    ConstLaneSpan(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                  std::span<const double> d)
        : re0(a), im0(b), re1(c), im1(d) {}
    ConstLaneSpan(const LaneSpan &l) : re0(l.re0), im0(l.im0), re1(l.re1), im1(l.im1) {}
    std::size_t size() const { return re0.size(); }
};

/// Owning SoA storage.
class LaneBuffer {
  public:
    explicit LaneBuffer(std::size_t n = 0) : re0_(n), im0_(n), re1_(n), im1_(n) {}

    std::size_t size() const { return re0_.size(); }
    LaneSpan lanes(std::size_t count);
    LaneSpan lanes() { return lanes(size()); }

    TwoLevelState get(std::size_t j) const { return {{re0_[j], im0_[j]}, {re1_[j], im1_[j]}}; }
    void set(std::size_t j, const TwoLevelState &psi);
    /// Copies lane `from` into lane `to`.
    void move_lane(std::size_t from, std::size_t to);

  private:
    std::vector<double> re0_, im0_, re1_, im1_;
};

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

/// Inner-loop kernels. Every implementation must produce results bit-identical
/// to the scalar reference: same operation order, no fused multiply-add.
struct KernelTable {
    Isa isa;
    /// psi <- u psi / ||u psi|| for every lane.
    void (*propagate_normalize)(const Mat2 &u, LaneSpan lanes);
    /// psi <- u psi without renormalization.
    void (*propagate)(const Mat2 &u, LaneSpan lanes);
    /// out[j] = |a1[j]|^2.
    void (*excited_population)(ConstLaneSpan lanes, std::span<double> out);
};

/// True when `isa` was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Throws std::invalid_argument if the ISA is unavailable.
const KernelTable &kernels(Isa isa);

/// Best available ISA, unless overridden by ZENO_SIMD=scalar|avx2|neon or
/// set_preferred_isa().
const KernelTable &active_kernels();
Isa detect_best_isa();
void set_preferred_isa(std::optional<Isa> isa);

namespace detail {
extern const KernelTable kScalarKernels;
#if defined(ZENO_HAVE_AVX2_KERNELS)
extern const KernelTable kAvx2Kernels;
#endif
#if defined(ZENO_HAVE_NEON_KERNELS)
extern const KernelTable kNeonKernels;
#endif
}  // namespace detail

}  // namespace zeno::simd

#endif
