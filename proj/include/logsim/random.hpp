#pragma once

#include <cstdint>
#include <limits>

#include "logsim/distribution.hpp"

namespace logsim {

// SplitMix64 (Steele, Lea & Flood). Eight bytes of state, identical output on
// every platform, and cheap to copy, which the engine relies on when it takes
// snapshots.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool operator==(const SplitMix64&) const = default;

private:
    std::uint64_t state_;
};

// Seed of an independent stream, e.g. (run seed, case number, attempt).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0) noexcept;

// Draw truncated at zero: negative draws are redrawn up to 100 times, then
// clamped to 0. fixed(v) returns v without consuming randomness.
// Normal variates use the Box-Muller cosine branch (two uniforms per draw).
double sample(const Distribution& dist, SplitMix64& rng);

}  // namespace logsim
