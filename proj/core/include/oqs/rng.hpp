#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace oqs {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer: a cheap, well-mixed 64-bit hash.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Derives an independent child seed from a base seed and a tag path
/// (e.g. {replicate, generation, member}). Deterministic and order-sensitive,
/// so parallel work items get reproducible, non-overlapping streams.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> tags) {
    std::uint64_t h = mix64(base);
    for (std::uint64_t t : tags) h = mix64(h ^ (t + 0x9e3779b97f4a7c15ull));
    return h;
}

}  // namespace oqs
