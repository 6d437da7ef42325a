// Copyright 2026 The hhl-resource-lab Authors
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

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace hhl {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
/// pure function of (counter, key), so any draw can be recomputed
/// independently of evaluation order.
class Philox4x32 {
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter generate(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            ctr = single_round(ctr, key);
        }
        return ctr;
    }

  private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

    static constexpr Counter single_round(const Counter &c, const Key &k) {
        std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
        std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
        auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        auto lo0 = static_cast<std::uint32_t>(p0);
        auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        auto lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

/// Standard normal variate keyed by (seed, stream, index), via Box-Muller on
/// two 53-bit uniforms taken from one Philox block.
inline double keyed_standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    Philox4x32::Counter ctr = {static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                               static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    Philox4x32::Key key = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    auto out = Philox4x32::generate(ctr, key);
    std::uint64_t a = (std::uint64_t{out[0]} << 32 | out[1]) >> 11;
    std::uint64_t b = (std::uint64_t{out[2]} << 32 | out[3]) >> 11;
    double u1 = (static_cast<double>(a) + 1.0) * 0x1.0p-53;  // (0, 1]
    double u2 = static_cast<double>(b) * 0x1.0p-53;          // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace hhl
