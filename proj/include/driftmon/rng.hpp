#pragma once

#include <cstdint>
#include <random>

namespace driftmon {

// Deterministic random source. std::mt19937_64's output sequence is pinned by
// the C++ standard, so seeded runs are bit-identical across platforms and
// compilers. The value mappings below are hand-rolled (instead of the
// std::*_distribution adaptors, whose algorithms are implementation-defined)
// so that serialized artifacts are byte-stable everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform on [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Unbiased integer in [0, n) via rejection sampling. n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        // Reject values in the tail partial block to avoid modulo bias.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

    // Derive an independent substream seed from (seed, stream). splitmix64
    // finalizer over a golden-ratio sequence step; avalanches all bits, so
    // nearby (seed, stream) pairs give unrelated streams.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 eng_;
};

} // namespace driftmon
