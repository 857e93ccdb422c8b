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

// AVX2 functions are enabled per function, not per file, so inline code shared
// with the scalar path is never emitted with AVX2 instructions. No FMA: every
// product is rounded before the following add, matching lane_ops.hpp bit for bit.

#include <immintrin.h>

#include "lane_ops.hpp"

namespace zeno::simd {

#define ZENO_AVX2 [[gnu::target("avx2")]]

namespace {

constexpr std::size_t kWidth = 4;

struct VecCoeffs {
    __m256d u00r, u00i, u01r, u01i, u10r, u10i, u11r, u11i;
};

ZENO_AVX2 inline VecCoeffs broadcast(const lane::Coeffs &c) {
    return {_mm256_set1_pd(c.u00r), _mm256_set1_pd(c.u00i), _mm256_set1_pd(c.u01r), _mm256_set1_pd(c.u01i),
            _mm256_set1_pd(c.u10r), _mm256_set1_pd(c.u10i), _mm256_set1_pd(c.u11r), _mm256_set1_pd(c.u11i)};
}

struct VecAmp {
    __m256d re0, im0, re1, im1;
};

ZENO_AVX2 inline VecAmp apply(const VecCoeffs &c, __m256d a0r, __m256d a0i, __m256d a1r, __m256d a1i) {
    VecAmp b;
    b.re0 = _mm256_sub_pd(
        _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(c.u00r, a0r), _mm256_mul_pd(c.u00i, a0i)), _mm256_mul_pd(c.u01r, a1r)),
        _mm256_mul_pd(c.u01i, a1i));
    b.im0 = _mm256_add_pd(
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(c.u00r, a0i), _mm256_mul_pd(c.u00i, a0r)), _mm256_mul_pd(c.u01r, a1i)),
        _mm256_mul_pd(c.u01i, a1r));
    b.re1 = _mm256_sub_pd(
        _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(c.u10r, a0r), _mm256_mul_pd(c.u10i, a0i)), _mm256_mul_pd(c.u11r, a1r)),
        _mm256_mul_pd(c.u11i, a1i));
    b.im1 = _mm256_add_pd(
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(c.u10r, a0i), _mm256_mul_pd(c.u10i, a0r)), _mm256_mul_pd(c.u11r, a1i)),
        _mm256_mul_pd(c.u11i, a1r));
    return b;
}

template <bool Normalize>
ZENO_AVX2 void propagate_avx2(const Mat2 &u, LaneSpan l) {
    const lane::Coeffs c = lane::split(u);
    const VecCoeffs v = broadcast(c);
    const __m256d one = _mm256_set1_pd(1.0);
    const std::size_t n = l.size();
    std::size_t j = 0;
    for (; j + kWidth <= n; j += kWidth) {
        VecAmp b = apply(v, _mm256_loadu_pd(&l.re0[j]), _mm256_loadu_pd(&l.im0[j]), _mm256_loadu_pd(&l.re1[j]),
                         _mm256_loadu_pd(&l.im1[j]));
        if constexpr (Normalize) {
            __m256d n2 = _mm256_add_pd(
                _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(b.re0, b.re0), _mm256_mul_pd(b.im0, b.im0)),
                              _mm256_mul_pd(b.re1, b.re1)),
                _mm256_mul_pd(b.im1, b.im1));
            __m256d s = _mm256_div_pd(one, _mm256_sqrt_pd(n2));
            b.re0 = _mm256_mul_pd(b.re0, s);
            b.im0 = _mm256_mul_pd(b.im0, s);
            b.re1 = _mm256_mul_pd(b.re1, s);
            b.im1 = _mm256_mul_pd(b.im1, s);
        }
        _mm256_storeu_pd(&l.re0[j], b.re0);
        _mm256_storeu_pd(&l.im0[j], b.im0);
        _mm256_storeu_pd(&l.re1[j], b.re1);
        _mm256_storeu_pd(&l.im1[j], b.im1);
    }
    for (; j < n; j++) {
        if constexpr (Normalize) {
            lane::propagate_normalize(c, l, j);
        } else {
            lane::propagate(c, l, j);
        }
    }
}

ZENO_AVX2 void excited_population_avx2(ConstLaneSpan l, std::span<double> out) {
    const std::size_t n = l.size();
    std::size_t j = 0;
    for (; j + kWidth <= n; j += kWidth) {
        __m256d re = _mm256_loadu_pd(&l.re1[j]);
        __m256d im = _mm256_loadu_pd(&l.im1[j]);
        _mm256_storeu_pd(&out[j], _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im)));
    }
    for (; j < n; j++) {
        out[j] = lane::excited_population(l, j);
    }
}

}  // namespace

const KernelTable detail::kAvx2Kernels{
    Isa::avx2,
    propagate_avx2<true>,
    propagate_avx2<false>,
    excited_population_avx2,
};

}  // namespace zeno::simd
