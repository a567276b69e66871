#pragma once

#include <cstdint>
#include <random>

namespace minfilter {

/// splitmix64 finalizer; used to turn (master seed, stream index) pairs into
/// well-separated engine seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t x = a + 0x9E3779B97F4A7C15ull * (b + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

/// Seeded random stream with portable helpers. The raw mt19937_64 sequence is
/// pinned by the standard, and the helpers below avoid std::*_distribution,
/// whose output is implementation-defined; identical seeds therefore give
/// identical streams everywhere.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

    /// Stream `stream` derived from a master seed; distinct streams are
    /// statistically independent.
    SeededRng(std::uint64_t master_seed, std::uint64_t stream)
        : engine_(mix_seed(master_seed, stream)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Unbiased uniform integer in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace minfilter
