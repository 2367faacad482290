#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ghrr {

/// All randomness flows through explicitly passed engines; nothing global.
using Rng = std::mt19937_64;

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

/// Stable sub-stream key: mixes a root seed with a tag and indices so that
/// independent work units own disjoint streams regardless of scheduling.
template <typename... Ix>
constexpr std::uint64_t derive_seed(std::uint64_t root, std::string_view tag, Ix... index) {
    std::uint64_t z = detail::splitmix64(root ^ detail::fnv1a(tag));
    ((z = detail::splitmix64(z ^ static_cast<std::uint64_t>(index))), ...);
    return z;
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

template <typename... Ix>
Rng make_stream(std::uint64_t root, std::string_view tag, Ix... index) {
    return Rng(derive_seed(root, tag, index...));
}

}  // namespace ghrr
