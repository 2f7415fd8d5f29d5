#pragma once

#include <cstdint>
#include <random>

namespace taxograft {

/// Unbiased draw in [0, bound) via Lemire's multiply-shift with rejection.
/// std::uniform_int_distribution is implementation-defined; this keeps seeded
/// runs byte-identical across standard libraries. bound must be positive.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
    std::uint64_t x = rng();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = rng();
            m = static_cast<__uint128_t>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform double in [0, 1) from the top 53 bits of the engine output.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

}  // namespace taxograft
