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

// AArch64 Advanced SIMD, two doubles per register. Uses separate vmulq/vaddq
// (never vfmaq) so rounding matches lane_ops.hpp.

#include <arm_neon.h>

#include "lane_ops.hpp"

namespace zeno::simd {

namespace {

constexpr std::size_t kWidth = 2;

template <bool Normalize>
void propagate_neon(const Mat2 &u, LaneSpan l) {
    const lane::Coeffs c = lane::split(u);
    const float64x2_t u00r = vdupq_n_f64(c.u00r), u00i = vdupq_n_f64(c.u00i);
    const float64x2_t u01r = vdupq_n_f64(c.u01r), u01i = vdupq_n_f64(c.u01i);
    const float64x2_t u10r = vdupq_n_f64(c.u10r), u10i = vdupq_n_f64(c.u10i);
    const float64x2_t u11r = vdupq_n_f64(c.u11r), u11i = vdupq_n_f64(c.u11i);
    const float64x2_t one = vdupq_n_f64(1.0);
    const std::size_t n = l.size();
    std::size_t j = 0;
    for (; j + kWidth <= n; j += kWidth) {
        float64x2_t a0r = vld1q_f64(&l.re0[j]), a0i = vld1q_f64(&l.im0[j]);
        float64x2_t a1r = vld1q_f64(&l.re1[j]), a1i = vld1q_f64(&l.im1[j]);
        float64x2_t re0 = vsubq_f64(vaddq_f64(vsubq_f64(vmulq_f64(u00r, a0r), vmulq_f64(u00i, a0i)), vmulq_f64(u01r, a1r)),
                                    vmulq_f64(u01i, a1i));
        float64x2_t im0 = vaddq_f64(vaddq_f64(vaddq_f64(vmulq_f64(u00r, a0i), vmulq_f64(u00i, a0r)), vmulq_f64(u01r, a1i)),
                                    vmulq_f64(u01i, a1r));
        float64x2_t re1 = vsubq_f64(vaddq_f64(vsubq_f64(vmulq_f64(u10r, a0r), vmulq_f64(u10i, a0i)), vmulq_f64(u11r, a1r)),
                                    vmulq_f64(u11i, a1i));
        float64x2_t im1 = vaddq_f64(vaddq_f64(vaddq_f64(vmulq_f64(u10r, a0i), vmulq_f64(u10i, a0r)), vmulq_f64(u11r, a1i)),
                                    vmulq_f64(u11i, a1r));
        if constexpr (Normalize) {
            float64x2_t n2 = vaddq_f64(
                vaddq_f64(vaddq_f64(vmulq_f64(re0, re0), vmulq_f64(im0, im0)), vmulq_f64(re1, re1)), vmulq_f64(im1, im1));
            float64x2_t s = vdivq_f64(one, vsqrtq_f64(n2));
            re0 = vmulq_f64(re0, s);
            im0 = vmulq_f64(im0, s);
            re1 = vmulq_f64(re1, s);
            im1 = vmulq_f64(im1, s);
        }
        vst1q_f64(&l.re0[j], re0);
        vst1q_f64(&l.im0[j], im0);
        vst1q_f64(&l.re1[j], re1);
        vst1q_f64(&l.im1[j], im1);
    }
    for (; j < n; j++) {
        if constexpr (Normalize) {
            lane::propagate_normalize(c, l, j);
        } else {
            lane::propagate(c, l, j);
        }
    }
}

void excited_population_neon(ConstLaneSpan l, std::span<double> out) {
    const std::size_t n = l.size();
    std::size_t j = 0;
    for (; j + kWidth <= n; j += kWidth) {
        float64x2_t re = vld1q_f64(&l.re1[j]);
        float64x2_t im = vld1q_f64(&l.im1[j]);
        vst1q_f64(&out[j], vaddq_f64(vmulq_f64(re, re), vmulq_f64(im, im)));
    }
    for (; j < n; j++) {
        out[j] = lane::excited_population(l, j);
    }
}

}  // namespace

const KernelTable detail::kNeonKernels{
    Isa::neon,
    propagate_neon<true>,
    propagate_neon<false>,
    excited_population_neon,
};

}  // namespace zeno::simd
