#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace edlgp {

// All randomness flows through explicitly passed engines. The helpers below
// avoid std:: distributions so streams are identical across standard libraries.
using Rng = std::mt19937_64;

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

// FNV-1a, 64 bit.
[[nodiscard]] constexpr std::uint64_t hash_bytes(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) noexcept
{
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

[[nodiscard]] constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept
{
    return splitmix64(seed ^ splitmix64(value + 0x632be59bd9b4e019ULL));
}

[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) noexcept
{
    return hash_combine(base, salt);
}

[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t base, std::string_view salt) noexcept
{
    return hash_combine(base, hash_bytes(salt));
}

// Uniform integer in [0, n). n must be > 0.
[[nodiscard]] inline std::size_t uniform_index(Rng& rng, std::size_t n)
{
    auto const range = static_cast<std::uint64_t>(n);
    auto const limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % range);
    std::uint64_t r = rng();
    while (r >= limit) {
        r = rng();
    }
    return static_cast<std::size_t>(r % range);
}

// Uniform integer in [lo, hi].
[[nodiscard]] inline int uniform_int(Rng& rng, int lo, int hi)
{
    return lo + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(hi - lo + 1)));
}

// Uniform real in [0, 1).
[[nodiscard]] inline double uniform01(Rng& rng)
{
    return static_cast<double>(rng() >> 11U) * 0x1.0p-53;
}

[[nodiscard]] inline double uniform_real(Rng& rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(rng);
}

// Standard normal via Box-Muller (one draw per call, second value discarded).
[[nodiscard]] double standard_normal(Rng& rng);

template <typename It>
void shuffle(It first, It last, Rng& rng)
{
    auto n = static_cast<std::size_t>(last - first);
    for (std::size_t i = n; i > 1; --i) {
        auto j = uniform_index(rng, i);
        std::swap(first[i - 1], first[j]);
    }
}

} // namespace edlgp
