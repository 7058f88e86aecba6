#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

// Deterministic stream derivation. Every randomized computation takes a
// master seed and derives one independent stream per logical cell, so
// results do not depend on execution order or thread count. Engines are
// std::mt19937_64 (its output sequence is fully specified by the standard);
// the integer reductions below replace std::uniform_int_distribution, whose
// mapping is implementation-defined.

namespace qwalk::rng {

// splitmix64 finalizer.
inline std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Stream key for one (label, index) cell under a master seed.
inline std::uint64_t derive(std::uint64_t master, std::string_view label, std::uint64_t index = 0) {
    return mix(mix(master ^ fnv1a(label)) ^ index);
}

// Uniform integer in [0, n) by rejection. n must be positive.
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
    const std::uint64_t rem = std::numeric_limits<std::uint64_t>::max() % n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
    std::uint64_t x = gen();
    while (x >= limit) x = gen();
    return x % n;
}

// Uniform k-subset via a partial Fisher-Yates pass; order is randomized.
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> pool, std::size_t k, std::mt19937_64& gen) {
    if (k > pool.size()) k = pool.size();
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(bounded(gen, pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

} // namespace qwalk::rng
