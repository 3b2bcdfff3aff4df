#pragma once

#include <cstdint>
#include <random>

namespace pgcaps {

// All randomness in the library flows from one root seed through named
// streams, so that a change in how one phase consumes randomness cannot
// silently shift another phase's draws.
//
// Generator: std::mt19937_64 (the algorithm and its single-value seeding
// are pinned by the C++ standard, so sequences are identical across
// platforms).  Uniform doubles are produced by the 53-bit mapping below
// instead of std::uniform_real_distribution, whose output is
// implementation-defined.
//
// Stream seeds are derived as
//   splitmix64(splitmix64(splitmix64(root) ^ tag) + step)
// with the tag values of the Stream enum.  This derivation is part of the
// reproducibility contract and is recorded in trace headers as
// "mt19937_64/splitmix64-streams".

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

enum class Stream : std::uint64_t {
    choose     = 0x63686F6F73650000ull,
    compensate = 0x636F6D70766E0000ull,
    greedy     = 0x6772656564790000ull,
    sample     = 0x73616D706C650000ull,
    diag       = 0x6469616700000000ull,
};

inline std::uint64_t stream_seed(std::uint64_t root, Stream s, std::uint64_t step) {
    return splitmix64(splitmix64(splitmix64(root) ^ static_cast<std::uint64_t>(s)) + step);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), n >= 1.  Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    std::uint64_t bits() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

inline Rng make_stream(std::uint64_t root, Stream s, std::uint64_t step = 0) {
    return Rng(stream_seed(root, s, step));
}

}  // namespace pgcaps
