#pragma once

#include <cstdint>

namespace clutterbench {

// Deterministic, portable randomness. Two published algorithms are used
// verbatim so other implementations can reproduce the streams bit for bit:
//
//   SplitMix64 (Steele, Lea, Flood 2014) seeds and derives substreams;
//   xoshiro256** 1.0 (Blackman, Vigna 2018) generates the draws.
//
// Substream derivation:
//   substream_seed(seed, index) =
//       SplitMix64(SplitMix64(seed).next() ^ (index + 1) * 0x9E3779B97F4A7C15).next()
// The draw helpers below define the only integer/real mappings used anywhere.

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& s : s_) s = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1): top 53 bits scaled by 2^-53.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). Rejection keeps the draw unbiased.
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t threshold = (0ULL - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t x = next();
            if (x >= threshold) return x % n;
        }
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        uniform_int(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 outer(seed);
    SplitMix64 inner(outer.next() ^ (index + 1) * 0x9E3779B97F4A7C15ULL);
    return inner.next();
}

}  // namespace clutterbench
