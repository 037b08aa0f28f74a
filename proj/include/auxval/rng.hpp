// Copyright 2026 The Authors.
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

#ifndef AUXVAL_RNG_HPP
#define AUXVAL_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace auxval {

/// Philox4x32-10 block function (Salmon et al., SC'11). Maps a 128-bit counter and a
/// 64-bit key to 128 pseudorandom bits.
inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                                  std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kM0 = 0xD2511F53;
    constexpr std::uint32_t kM1 = 0xCD9E8D57;
    constexpr std::uint32_t kW0 = 0x9E3779B9;
    constexpr std::uint32_t kW1 = 0xBB67AE85;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

/// A counter-based random stream identified by (seed, stream id).
///
/// Two streams with different ids never share a counter block, so every shot of a
/// batch can own an independent substream regardless of which worker executes it.
/// Satisfies UniformRandomBitGenerator.
class PhiloxStream {
  public:
    using result_type = std::uint32_t;

    PhiloxStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_{static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)} {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (lane_ == 4) {
            refill();
        }
        return buffer_[lane_++];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        const std::uint64_t hi = (*this)() >> 5;  // 27 bits
        const std::uint64_t lo = (*this)() >> 6;  // 26 bits
        return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
    }

    /// True with probability `prob`; prob <= 0 is never true, prob >= 1 always true.
    bool bernoulli(double prob) { return uniform() < prob; }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // Rejection sampling over 64-bit draws keeps the result exactly uniform.
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        while (true) {
            const std::uint64_t x = (static_cast<std::uint64_t>((*this)()) << 32) | (*this)();
            if (x < limit) {
                return x % n;
            }
        }
    }

  private:
    void refill() {
        buffer_ = philox4x32_10({static_cast<std::uint32_t>(block_),
                                 static_cast<std::uint32_t>(block_ >> 32), stream_[0], stream_[1]},
                                key_);
        ++block_;
        lane_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 2> stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int lane_ = 4;
};

}  // namespace auxval

#endif  // AUXVAL_RNG_HPP
