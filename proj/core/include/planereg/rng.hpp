#pragma once

#include <cstdint>

namespace planereg {

/// splitmix64: tiny, fast, well-mixed generator. Used everywhere instead of
/// std distributions so that seeded results are identical across standard
/// library versions. Also doubles as a hash for deriving independent
/// per-task seed streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        // multiply-shift; bias is negligible for n << 2^64
        return static_cast<std::uint64_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

/// Mixes several values into one seed (order-sensitive). Lets independent
/// work items (benchmark trials, per-candidate sampling) draw from
/// deterministic streams regardless of evaluation order.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    Rng r(a ^ 0xD1B54A32D192ED03ULL);
    std::uint64_t s = r.next_u64() ^ b;
    Rng r2(s);
    return r2.next_u64() ^ (c * 0x9E3779B97F4A7C15ULL);
}

}  // namespace planereg
