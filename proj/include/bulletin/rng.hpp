#pragma once

#include <cstdint>

namespace bulletin {

// splitmix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937 +
// <random> distributions because the stream must be bit-reproducible
// across standard libraries; fixture corpora are keyed by these values.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by modulo; bias is irrelevant at fixture scale
    // and the reduction is trivially portable.
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    // Uniform integer in [lo, hi], inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform in [0,1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

} // namespace bulletin
