#pragma once

// Counter-based random streams: every (seed, stream) pair yields its own
// reproducible sequence, so trial i draws the same numbers no matter which
// worker runs it or in what order.

#include <cstdint>
#include <vector>

namespace kcube {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Derives an independent seed for a sub-stream (e.g. one fault size of a sweep).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream)
{
    return mix64(master ^ mix64(stream + 0x632be59bd9b4e019ull));
}

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : state_(derive_seed(seed, stream)) {}

    std::uint64_t next()
    {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound) by rejection; bound must be positive.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
        for (;;) {
            const auto r = next();
            if (r >= limit) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

/// Uniform size-`count` subset of [0, universe), sorted ascending (Floyd's
/// algorithm). Requires count <= universe.
std::vector<std::uint64_t> sample_subset(CounterRng& rng, std::uint64_t universe, std::uint64_t count);

}  // namespace kcube
