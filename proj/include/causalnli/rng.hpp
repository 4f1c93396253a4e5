#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace causalnli {

/// Deterministic generator used everywhere randomness is needed
/// ("splitmix64-v1"). Self-contained so that streams are bit-identical
/// across platforms and standard-library versions, unlike the std
/// distributions, whose outputs are implementation-defined.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    /// Substream `stream` of a master seed; derived substreams are
    /// independent of each other and stable across versions.
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 mixer(seed);
        const std::uint64_t a = mixer.next();
        SplitMix64 salt(stream ^ 0x9e3779b97f4a7c15ull);
        return SplitMix64(a ^ salt.next());
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound) by rejection sampling (no modulo bias).
    std::uint64_t bounded(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("bound must be positive");
        const std::uint64_t min = (-bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t x = next();
            if (x >= min) return x % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Fisher-Yates shuffle driven by SplitMix64.
template <typename T>
void deterministic_shuffle(std::vector<T>& values, SplitMix64& rng) {
    for (std::size_t i = values.size(); i > 1; --i)
        std::swap(values[i - 1], values[rng.bounded(i)]);
}

}  // namespace causalnli
