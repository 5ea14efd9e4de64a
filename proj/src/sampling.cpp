#include "kcube/sampling.hpp"

#include "kcube/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace kcube {

std::vector<std::uint64_t> sample_subset(CounterRng& rng, std::uint64_t universe, std::uint64_t count)
{
    if (count > universe) throw InvalidArgument("cannot sample more elements than the universe holds");
    std::vector<std::uint64_t> out;
    out.reserve(count);
    if (count <= 64) {
        for (std::uint64_t j = universe - count; j < universe; ++j) {
            const auto t = rng.below(j + 1);
            const bool seen = std::find(out.begin(), out.end(), t) != out.end();
            out.push_back(seen ? j : t);
        }
    } else {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(count * 2);
        for (std::uint64_t j = universe - count; j < universe; ++j) {
            const auto t = rng.below(j + 1);
            const auto pick = seen.contains(t) ? j : t;
            seen.insert(pick);
            out.push_back(pick);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace kcube
