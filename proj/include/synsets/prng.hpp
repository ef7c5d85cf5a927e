#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace synsets {

// splitmix64: tiny, fast, and identical on every platform. All randomness in
// this library flows through it so outputs are reproducible byte for byte.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Modulo bias is irrelevant at our sizes; a pinned
    // formula matters more than perfect uniformity.
    std::uint64_t bounded(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Per-stage seed derivation: hashing the stage name into the seed means
// adding or removing one stage never perturbs another stage's randomness.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view stage) {
    return SplitMix64(seed ^ fnv1a64(stage)).next();
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return SplitMix64(seed ^ (salt * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL)).next();
}

// Fisher-Yates with the pinned generator (std::shuffle is implementation-defined).
template <typename T>
void seeded_shuffle(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.bounded(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace synsets
