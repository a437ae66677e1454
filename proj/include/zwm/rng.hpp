// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace zwm {

/// splitmix64 step (Steele/Lea/Flood constants); used to condition seeds and
/// to derive per-batch sub-seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Sub-seed for batch `index`: the (index+1)-th output of the splitmix64
/// stream seeded with the master seed. Documented so parallel shot batches
/// are reproducible across implementations.
inline std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t out = 0;
    for (std::uint64_t k = 0; k <= index; ++k) out = splitmix64_next(s);
    return out;
}

/// xorshift64* generator: shifts 12, 25, 27 and multiplier
/// 0x2545F4914F6CDD1D. The seed is conditioned through one splitmix64 step so
/// any 64-bit value (including 0) is usable. All constants are part of the
/// wire contract: fixtures must reproduce bit-for-bit in any implementation.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed) {
        std::uint64_t s = seed;
        state_ = splitmix64_next(s);
        if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
    }

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    /// uniform double in [0, 1), 53-bit resolution
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// uniform double in (0, 1]
    double next_open() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace zwm
