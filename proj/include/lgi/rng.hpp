/**
 * @file rng.hpp
 * @brief Portable seedable random streams.
 *
 * The generator is xoshiro256** (Blackman & Vigna) with its 256-bit state
 * filled from SplitMix64. Normal deviates use the Box-Muller cosine branch,
 * consuming exactly two 64-bit outputs per draw, so a stream's sequence of
 * normals depends only on the seed.
 *
 * Stream splitting: the child stream for key k of a base seed s is seeded
 * with splitmix64_mix(s + (k + 1) * 0x9E3779B97F4A7C15). Sweeps use the data
 * point index as the key, so results do not depend on evaluation order.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace lgi {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 finalizer.
inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) noexcept {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += kGoldenGamma;
            word = splitmix64_mix(x);
        }
    }

    /// Stream with an explicit xoshiro256** state (must not be all zero).
    static RandomStream from_state(const std::array<std::uint64_t, 4>& state) noexcept {
        RandomStream r(0);
        r.state_ = state;
        return r;
    }

    /// Independent stream keyed by an index (e.g. a sweep point).
    static RandomStream child(std::uint64_t seed, std::uint64_t key) noexcept {
        return RandomStream(splitmix64_mix(seed + (key + 1) * kGoldenGamma));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    double normal() noexcept {
        const double u1 = static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace lgi
