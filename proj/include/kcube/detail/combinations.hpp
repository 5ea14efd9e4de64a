#pragma once

#include "kcube/torus.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace kcube::detail {

/// Visits, in lexicographic order, every size-`size` subset of [0, universe)
/// whose smallest element is `first`. Stops early when fn returns false.
/// Returns false iff stopped early.
template <class Fn>
bool for_each_combination_from(std::uint64_t universe, std::uint64_t size, Code first, Fn&& fn)
{
    if (size == 0 || first + size > universe) return true;
    std::vector<Vertex> combo(size);
    for (std::uint64_t i = 0; i < size; ++i) combo[i] = Vertex{first + i};
    for (;;) {
        if (!fn(std::span<const Vertex>(combo))) return false;
        std::uint64_t i = size - 1;
        while (i >= 1 && combo[i].code == universe - size + i) --i;
        if (i == 0) return true;
        ++combo[i].code;
        for (std::uint64_t j = i + 1; j < size; ++j) combo[j].code = combo[j - 1].code + 1;
    }
}

}  // namespace kcube::detail
