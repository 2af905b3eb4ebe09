// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace irslink {

// splitmix64 output function. Used both to expand a 64-bit seed into engine
// state and to spawn per-trial child seeds by random access, so trial t can
// be reproduced without generating trials 0..t-1 first.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master + 0x9E3779B97F4A7C15ULL * (index + 1));
}

// xoshiro256++ seeded through splitmix64. std::mt19937_64 would do as an
// engine, but the standard uniform_real_distribution is implementation
// defined and would break byte-reproducibility of results across toolchains,
// so both the engine and the double mapping are pinned down here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s += 0x9E3779B97F4A7C15ULL;
            word = mix64(s);
        }
    }

    std::uint64_t next() {
        const std::uint64_t out = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return out;
    }

    // uniform on [0, 1) with 53-bit resolution
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform on [-bound, bound]; exactly zero when bound is zero
    double symmetric(double bound) { return bound * (2.0 * uniform() - 1.0); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace irslink
