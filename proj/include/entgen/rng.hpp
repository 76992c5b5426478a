// rng.hpp — deterministic seed partitioning and low-discrepancy start points

#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace entgen::rng {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for stream `index` under master seed `seed`. Streams never share state, so any
// partition of indices across workers reproduces the same draws.
inline constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x5851f42d4c957f2dULL));
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(stream_seed(seed, index));
}

inline double to_unit(std::uint64_t x) noexcept { return static_cast<double>(x >> 11) * 0x1.0p-53; }

inline double radical_inverse(std::uint64_t n, std::uint64_t base) noexcept {
    double inv = 1.0 / static_cast<double>(base), f = inv, r = 0.0;
    while (n > 0) {
        r += f * static_cast<double>(n % base);
        n /= base;
        f *= inv;
    }
    return r;
}

// Point `index` of the 4-D Halton sequence (bases 2,3,5,7), shifted modulo 1 by a
// seed-dependent offset. seed == 0 gives the unshifted sequence.
inline std::array<double, 4> halton4(std::uint64_t index, std::uint64_t seed) noexcept {
    static constexpr std::array<std::uint64_t, 4> bases{2, 3, 5, 7};
    std::array<double, 4> p{};
    for (std::size_t d = 0; d < 4; ++d) {
        double v = radical_inverse(index + 1, bases[d]);
        if (seed != 0) {
            v += to_unit(stream_seed(seed, d));
            v -= static_cast<double>(static_cast<long long>(v));
        }
        p[d] = v;
    }
    return p;
}

} // namespace entgen::rng
