#pragma once

#include <cstdint>
#include <random>

namespace ajdn {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent engine for substream `stream` of master seed `seed`. Draws from a
// substream do not depend on which other substreams were used, or in what order.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t domain = 0) {
    const std::uint64_t key = splitmix64(splitmix64(seed ^ splitmix64(domain)) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
    return std::mt19937_64(key);
}

// Substream domains keep bootstrap multipliers and simulation draws apart.
inline constexpr std::uint64_t kBootstrapDomain = 0xB0075;
inline constexpr std::uint64_t kSimulationDomain = 0x5111;

} // namespace ajdn
