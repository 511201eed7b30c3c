#pragma once

#include <cstdint>
#include <random>

namespace prophet {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used only to derive
/// substream seeds, never as the sampling generator itself.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of trial `trial_index` under `master_seed`.
constexpr std::uint64_t substream_seed(std::uint64_t master_seed,
                                       std::uint64_t trial_index) noexcept {
    return splitmix64(master_seed ^ trial_index);
}

/// Sampling generator: std::mt19937_64 (its output sequence is fixed by the
/// C++ standard) with hand-rolled conversions, because the standard
/// distributions are implementation-defined and would break reproducibility
/// across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Rejection sampling, unbiased.
    std::uint64_t uniform_index(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % bound;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace prophet
