#include "logsim/random.hpp"

#include <cmath>
#include <numbers>

namespace logsim {
namespace {

std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double standard_normal(SplitMix64& rng) {
    const double u1 = 1.0 - rng.uniform();  // (0, 1]
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double draw(const Distribution& dist, SplitMix64& rng) {
    switch (dist.kind()) {
        case DistributionKind::exponential:
            return -std::log1p(-rng.uniform()) / dist.param(0);
        case DistributionKind::normal:
            return dist.param(0) + dist.param(1) * standard_normal(rng);
        case DistributionKind::lognormal:
            return std::exp(dist.param(0) + dist.param(1) * standard_normal(rng));
        case DistributionKind::uniform:
            return dist.param(0) + (dist.param(1) - dist.param(0)) * rng.uniform();
        case DistributionKind::fixed:
            return dist.param(0);
    }
    return 0.0;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) noexcept {
    return mix(mix(seed ^ 0x6A09E667F3BCC909ULL) + mix(stream + 0x9E3779B97F4A7C15ULL) * 31 +
               mix(substream ^ 0xBB67AE8584CAA73BULL));
}

double sample(const Distribution& dist, SplitMix64& rng) {
    if (dist.kind() == DistributionKind::fixed) {
        return dist.param(0);
    }
    for (int attempt = 0; attempt <= 100; ++attempt) {
        const double x = draw(dist, rng);
        if (x >= 0) {
            return x;
        }
    }
    return 0.0;
}

}  // namespace logsim
