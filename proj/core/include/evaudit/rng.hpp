#pragma once

// Deterministic sampling helpers. Everything here is pinned to a fixed
// algorithm (mt19937_64 + multiply-shift bounded draw) so that identical
// seeds give identical results on every platform. Audit tooling and
// re-scoring rely on that.

#include <cstdint>
#include <random>
#include <vector>

namespace evaudit {

// Maps a raw 64-bit draw onto [0, n) without implementation-defined
// behavior (std::uniform_int_distribution is not portable).
inline std::uint64_t bounded(std::uint64_t raw, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(raw) * n) >> 64);
}

// splitmix64 finalizer; used to derive independent sub-seeds from one
// rollout seed. probe_seed(seed, k) is the contract for per-step
// perturbation seeds: mix the rollout seed with the step index.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t probe_seed(std::uint64_t seed, int step_index) {
    return splitmix64(seed ^ (static_cast<std::uint64_t>(step_index) *
                              0x9E3779B97F4A7C15ULL));
}

// First k elements of a seeded Fisher-Yates pass over [0, n).
// Selection order is preserved (not sorted).
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                               std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::mt19937_64 eng(seed);
    if (k > n) k = n;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + bounded(eng(), n - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace evaudit
