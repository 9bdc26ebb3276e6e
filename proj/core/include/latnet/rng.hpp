#pragma once

#include <cstdint>
#include <random>

namespace latnet {

/// Derives a child seed from (seed, index). SplitMix64 finalizer applied to
/// seed + golden-ratio * (index + 1); this is the documented splitting rule
/// used for cell and replication streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic stream wrapper around std::mt19937_64. Uniform doubles use
/// the top 53 bits so results do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// P(true) = p for p in [0,1]; p=0 never fires, p=1 always fires.
    bool bernoulli(double p) { return uniform() < p; }

    /// Unbiased integer in [0, bound) via rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace latnet
