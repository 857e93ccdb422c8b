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

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "zeno/rng.hpp"

using zeno::RngStream;

TEST_CASE("philox4x32-10 known-answer vectors") {
    using A4 = std::array<std::uint32_t, 4>;
    using A2 = std::array<std::uint32_t, 2>;
    CHECK(zeno::philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(zeno::philox4x32_10(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}) ==
          A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(zeno::philox4x32_10(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
          A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and addressable") {
    RngStream a(42, 7), b(42, 7);
    std::vector<double> xs;
    for (int k = 0; k < 100; k++) {
        double x = a.next_uniform();
        CHECK(x == b.next_uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        xs.push_back(x);
    }
    CHECK(a.draws() == 100);
    RngStream c(42, 7);
    CHECK(RngStream::to_unit(c.bits_at(57)) == xs[57]);
    CHECK(c.draws() == 0);
}

TEST_CASE("distinct seeds and streams differ") {
    RngStream base(1, 0), other_stream(1, 1), other_seed(2, 0), high_stream(1, std::uint64_t{1} << 40);
    int same_stream = 0, same_seed = 0, same_high = 0;
    for (int k = 0; k < 64; k++) {
        double x = base.next_uniform();
        same_stream += x == other_stream.next_uniform();
        same_seed += x == other_seed.next_uniform();
        same_high += x == high_stream.next_uniform();
    }
    CHECK(same_stream == 0);
    CHECK(same_seed == 0);
    CHECK(same_high == 0);
}

TEST_CASE("to_unit covers the unit interval") {
    CHECK(RngStream::to_unit(0) == 0.0);
    CHECK(RngStream::to_unit(~std::uint64_t{0}) < 1.0);
    CHECK(RngStream::to_unit(~std::uint64_t{0}) == 1.0 - 0x1.0p-53);
}

TEST_CASE("uniform moments and stream correlation") {
    // 2e5 draws: mean and variance within 5 sigma, neighbouring streams uncorrelated.
    constexpr int kDraws = 200000;
    double sum = 0, sum2 = 0, cross = 0;
    RngStream a(2026, 0), b(2026, 1);
    std::array<int, 10> bins{};
    for (int k = 0; k < kDraws; k++) {
        double x = a.next_uniform(), y = b.next_uniform();
        sum += x;
        sum2 += x * x;
        cross += (x - 0.5) * (y - 0.5);
        bins[static_cast<std::size_t>(x * 10)]++;
    }
    const double n = kDraws;
    CHECK(std::abs(sum / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
    CHECK(std::abs(sum2 / n - 1.0 / 3) < 5 * std::sqrt(4.0 / 45 / n));
    CHECK(std::abs(cross / n) < 5 * (1.0 / 12) / std::sqrt(n));
    double chi2 = 0;
    for (int count : bins) chi2 += (count - n / 10) * (count - n / 10) / (n / 10);
    // 9 degrees of freedom; 0.9999 quantile is about 33.7.
    CHECK(chi2 < 33.7);
}
