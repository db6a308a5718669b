#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace latd {

// SplitMix64 stream.  Streams are keyed by (seed, counter), so any sample
// index can be generated independently of all others; results do not depend
// on evaluation order or thread count.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // Unbiased uniform draw from [0, n) by rejection.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = n * (~std::uint64_t{0} / n);
        std::uint64_t x;
        do { x = next(); } while (x >= limit);
        return x % n;
    }

    // Uniform integer in [-r, r].
    std::int64_t next_symmetric(std::int64_t r) {
        return static_cast<std::int64_t>(next_below(2 * static_cast<std::uint64_t>(r) + 1)) - r;
    }

private:
    std::uint64_t state_;
};

inline SplitMix64 keyed_stream(std::uint64_t seed, std::uint64_t counter) {
    return SplitMix64(SplitMix64::mix(seed + 0x9E3779B97F4A7C15ull) ^ (counter * 0xD1B54A32D192ED03ull));
}

// 95% Wilson score interval; stable near ratios 0 and 1.
inline std::pair<double, double> wilson_interval(std::int64_t hits, std::int64_t samples) {
    const double z = 1.959963984540054;
    const double n = static_cast<double>(samples);
    const double phat = static_cast<double>(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    double lo = center - half, hi = center + half;
    if (lo < 0.0) lo = 0.0;
    if (hi > 1.0) hi = 1.0;
    return {lo, hi};
}

} // namespace latd
