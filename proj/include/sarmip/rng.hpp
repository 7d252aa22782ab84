#pragma once
#include <cstdint>
#include <random>
#include <string_view>

namespace sarmip {

// All randomness in the toolkit flows through this header so that results are
// reproducible bit-for-bit across platforms. std::mt19937_64 has a pinned
// sequence; the draw helpers below avoid std::*_distribution, whose output is
// implementation-defined.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Child-seed derivation: child = mix(parent, stream tag, index). Documented in
// the README; experiments are replayable from one integer.
inline std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag, std::uint64_t index) {
    return splitmix64(parent ^ fnv1a64(tag) ^ splitmix64(index + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased-enough bounded draw (multiply-high); deterministic everywhere.
    std::uint32_t next_below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    // Uniform in [0, 1) with 53 bits.
    double next_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_real() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace sarmip
