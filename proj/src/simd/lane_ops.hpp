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

// Per-lane reference arithmetic. The vector kernels reproduce exactly this
// sequence of IEEE operations and fall back to it for tail lanes.

#ifndef ZENO_SIMD_LANE_OPS_HPP
#define ZENO_SIMD_LANE_OPS_HPP

#include <cmath>
#include <cstddef>

#include "zeno/simd.hpp"

namespace zeno::simd::lane {

struct Coeffs {
    double u00r, u00i, u01r, u01i, u10r, u10i, u11r, u11i;
};

inline Coeffs split(const Mat2 &u) {
    return {u.m[0].real(), u.m[0].imag(), u.m[1].real(), u.m[1].imag(),
            u.m[2].real(), u.m[2].imag(), u.m[3].real(), u.m[3].imag()};
}

struct Amp {
    double re0, im0, re1, im1;
};

inline Amp apply(const Coeffs &c, double a0r, double a0i, double a1r, double a1i) {
    Amp b;
    b.re0 = ((c.u00r * a0r - c.u00i * a0i) + c.u01r * a1r) - c.u01i * a1i;
    b.im0 = ((c.u00r * a0i + c.u00i * a0r) + c.u01r * a1i) + c.u01i * a1r;
    b.re1 = ((c.u10r * a0r - c.u10i * a0i) + c.u11r * a1r) - c.u11i * a1i;
    b.im1 = ((c.u10r * a0i + c.u10i * a0r) + c.u11r * a1i) + c.u11i * a1r;
    return b;
}

inline double inv_norm(const Amp &b) {
    double n2 = ((b.re0 * b.re0 + b.im0 * b.im0) + b.re1 * b.re1) + b.im1 * b.im1;
    return 1.0 / std::sqrt(n2);
}

inline void propagate(const Coeffs &c, LaneSpan l, std::size_t j) {
    Amp b = apply(c, l.re0[j], l.im0[j], l.re1[j], l.im1[j]);
    l.re0[j] = b.re0;
    l.im0[j] = b.im0;
    l.re1[j] = b.re1;
    l.im1[j] = b.im1;
}

inline void propagate_normalize(const Coeffs &c, LaneSpan l, std::size_t j) {
    Amp b = apply(c, l.re0[j], l.im0[j], l.re1[j], l.im1[j]);
    double s = inv_norm(b);
    l.re0[j] = b.re0 * s;
    l.im0[j] = b.im0 * s;
    l.re1[j] = b.re1 * s;
    l.im1[j] = b.im1 * s;
}

inline double excited_population(ConstLaneSpan l, std::size_t j) {
    return l.re1[j] * l.re1[j] + l.im1[j] * l.im1[j];
}

}  // namespace zeno::simd::lane

#endif
