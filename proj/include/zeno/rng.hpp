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

#ifndef ZENO_RNG_HPP
#define ZENO_RNG_HPP

#include <array>
#include <cstdint>

namespace zeno {

/// Philox4x32 with 10 rounds, as in Random123. Pure function of
/// (counter, key); no internal state.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// One independent, reproducible uniform stream.
///
/// Draw k of stream (seed, index) is philox(counter = {k, index}, key = seed),
/// so any draw is addressable without replaying the stream, and results never
/// depend on how streams are scheduled across threads.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
        : master_seed_(master_seed), stream_index_(stream_index) {}

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_index() const noexcept { return stream_index_; }
    std::uint64_t draws() const noexcept { return draw_index_; }

    /// Raw 64 bits of draw number `draw`; does not advance the stream.
    std::uint64_t bits_at(std::uint64_t draw) const noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double next_uniform() noexcept { return to_unit(bits_at(draw_index_++)); }

    static double to_unit(std::uint64_t bits) noexcept { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::uint64_t draw_index_ = 0;
};

}  // namespace zeno

#endif
