#pragma once

#include <cstdint>

namespace qldpc {

/// Counter-based deterministic RNG (splitmix64 core). A stream is keyed by a
/// seed plus up to three stream indices, so frame t of experiment (seed, p
/// index) regenerates identically on any worker and any platform. Doubles are
/// derived from the top 53 bits; no libstdc++ distributions are used, so the
/// byte stream is implementation-independent.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t s1 = 0, std::uint64_t s2 = 0,
                        std::uint64_t s3 = 0) {
        state_ = mix(seed + 0x9E3779B97F4A7C15ull);
        state_ = mix(state_ ^ mix(s1 + 0xBF58476D1CE4E5B9ull));
        state_ = mix(state_ ^ mix(s2 + 0x94D049BB133111EBull));
        state_ = mix(state_ ^ mix(s3 + 0xD6E8FEB86659FD93ull));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, n), unbiased (rejection sampling). n > 0.
    std::uint32_t uniform_below(std::uint32_t n) {
        const std::uint64_t span = n;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return static_cast<std::uint32_t>(x % span);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_ = 0;
};

}  // namespace qldpc
