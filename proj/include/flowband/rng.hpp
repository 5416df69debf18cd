#ifndef FLOWBAND_RNG_HPP
#define FLOWBAND_RNG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace flowband {

/// Counter-based deterministic generator (SplitMix64). The n-th output is a
/// pure function of (seed, n): state_n = seed + (n+1) * 0x9E3779B97F4A7C15,
/// output = mix(state_n) with the standard SplitMix64 finalizer. Identical
/// seeds replay identical streams on every platform; distinct workers use
/// seeds derived via derive_seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t draws() const { return counter_; }

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Unbiased uniform draw from {0, .., bound-1} (rejection method).
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::next_below: zero bound");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t v = next_u64();
            if (v >= threshold) return v % bound;
        }
    }

    /// Uniform integer in [lo, hi], inclusive.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("Rng::next_int: empty range");
        return lo + static_cast<std::int64_t>(
                        next_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Uniform real in [0, 1) with 53 random bits.
    double next_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform real in [lo, hi).
    double next_real(double lo, double hi) { return lo + (hi - lo) * next_real(); }

    /// Standard normal via Box-Muller; two uniform draws per call.
    double next_gaussian() {
        double u1 = next_real();
        while (u1 <= 0.0) u1 = next_real();
        const double u2 = next_real();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// Derives an independent stream seed from a root seed and a textual tag
/// (FNV-1a of the tag folded through the SplitMix64 finalizer). All module
/// randomness hangs off one root seed through this.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view tag) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    std::uint64_t z = root ^ h;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::string_view tag, std::uint64_t index) {
    return derive_seed(root ^ (0x9E3779B97F4A7C15ULL * (index + 1)), tag);
}

} // namespace flowband

#endif
