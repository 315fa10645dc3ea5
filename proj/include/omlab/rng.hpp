#pragma once

/// @file rng.hpp
/// @brief Deterministic random streams.
///
/// Every random draw in the library comes from an `Rng` whose seed is derived
/// from the run seed plus a stream identifier through `derive_seed`. Both the
/// generator (SplitMix64) and the bounded-integer reduction are fully specified
/// here, so results are bit-identical across compilers and standard libraries,
/// which is not guaranteed by the `<random>` distributions.
///
/// Seed derivation: starting from h = 0x6a09e667f3bcc908, each word w is folded
/// as h = mix64(h ^ mix64(w + 0x9e3779b97f4a7c15)), where mix64 is the
/// SplitMix64 finalizer (xor-shift 30/27/31 with multipliers
/// 0xbf58476d1ce4e5b9 and 0x94d049bb133111eb).

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace omlab {

__extension__ using uint128_t = unsigned __int128;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) noexcept {
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    for (std::uint64_t w : words) h = mix64(h ^ mix64(w + 0x9e3779b97f4a7c15ULL));
    return h;
}

/// SplitMix64 stream. Satisfies UniformRandomBitGenerator.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit constexpr Rng(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection; bound > 0.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        auto product = static_cast<uint128_t>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                product = static_cast<uint128_t>((*this)()) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace omlab
