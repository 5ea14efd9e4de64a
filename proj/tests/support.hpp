#pragma once

#include "kcube/sampling.hpp"
#include "kcube/torus.hpp"

#include <cstdint>
#include <vector>

namespace support {

inline std::vector<std::uint64_t> codes_of(const kcube::VertexSet& s)
{
    std::vector<std::uint64_t> out;
    for (auto v : s) out.push_back(v.code);
    return out;
}

inline kcube::VertexSet set_of(const kcube::TorusParams& p, const std::vector<std::uint64_t>& codes)
{
    return kcube::VertexSet::from_codes(p, codes);
}

/// Random subset of the vertex set with a random size in [0, max_size].
inline kcube::VertexSet random_set(const kcube::TorusParams& p, std::uint64_t seed, std::uint64_t index,
                                   std::uint64_t max_size)
{
    kcube::CounterRng rng(seed, index);
    const auto size = rng.below(max_size + 1);
    return set_of(p, kcube::sample_subset(rng, p.vertex_count(), size));
}

}  // namespace support
