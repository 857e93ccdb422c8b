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

#include "lane_ops.hpp"

namespace zeno::simd {

namespace {

void propagate_normalize_scalar(const Mat2 &u, LaneSpan lanes) {
    const lane::Coeffs c = lane::split(u);
    for (std::size_t j = 0; j < lanes.size(); j++) {
        lane::propagate_normalize(c, lanes, j);
    }
}

void propagate_scalar(const Mat2 &u, LaneSpan lanes) {
    const lane::Coeffs c = lane::split(u);
    for (std::size_t j = 0; j < lanes.size(); j++) {
        lane::propagate(c, lanes, j);
    }
}

void excited_population_scalar(ConstLaneSpan lanes, std::span<double> out) {
    for (std::size_t j = 0; j < lanes.size(); j++) {
        out[j] = lane::excited_population(lanes, j);
    }
}

}  // namespace

const KernelTable detail::kScalarKernels{
    Isa::scalar,
    propagate_normalize_scalar,
    propagate_scalar,
    excited_population_scalar,
};

}  // namespace zeno::simd
