#include "kcube/cuts.hpp"
#include "kcube/detail/combinations.hpp"
#include "kcube/detail/parallel.hpp"
#include "kcube/errors.hpp"
#include "kcube/solver.hpp"

#include <atomic>
#include <limits>
#include <memory>

namespace kcube {

namespace {

bool is_extra_cut(std::span<const std::uint64_t> sizes, int h)
{
    if (sizes.size() < 2) return false;
    for (auto s : sizes) {
        if (s <= static_cast<std::uint64_t>(h)) return false;
    }
    return true;
}

// First (lexicographically) size-`size` subset whose smallest member is
// `first` and which is an h-extra cut.
std::optional<std::vector<Vertex>> first_cut_in_block(SurvivorScanner& scanner, std::uint64_t universe,
                                                      std::uint64_t size, Code first, int h)
{
    std::optional<std::vector<Vertex>> hit;
    detail::for_each_combination_from(universe, size, first, [&](std::span<const Vertex> combo) {
        if (!is_extra_cut(scanner.scan(combo), h)) return true;
        hit.emplace(combo.begin(), combo.end());
        return false;
    });
    return hit;
}

}  // namespace

KappaCertificate kappa_subset_oracle(const Torus& torus, int h, const SearchConfig& cfg)
{
    cfg.validate();
    if (h < 0) throw InvalidArgument("h must be non-negative");
    const auto& params = torus.params();
    const std::uint64_t universe = torus.vertex_count();
    const std::uint64_t need_survivors = 2 * (static_cast<std::uint64_t>(h) + 1);
    if (universe < need_survivors + 1) {
        throw NoCutExists("Q_" + std::to_string(params.n) + "^" + std::to_string(params.k) +
                          " is too small to have a " + std::to_string(h) + "-extra vertex-cut");
    }
    const std::uint64_t largest_possible = universe - need_survivors;

    auto budget = cfg.max_cut_size;
    if (!budget) budget = formula_value(params, h);
    const std::uint64_t limit = budget ? std::min(*budget, largest_possible) : largest_possible;

    const auto cost = subsets_up_to(universe, limit);
    if (cost > cfg.subset_ceiling) {
        const auto visits = cost == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                               : std::to_string(cost);
        throw SearchRefused("subset enumeration would visit " + visits + " sets, above the ceiling of " + std::to_string(cfg.subset_ceiling) +
                            " (KCUBE_SUBSET_CEILING)");
    }

    const unsigned workers = std::max(1u, cfg.worker_count);
    std::vector<std::unique_ptr<SurvivorScanner>> scanners;
    for (unsigned w = 0; w < workers; ++w) scanners.push_back(std::make_unique<SurvivorScanner>(torus));

    for (std::uint64_t size = 1; size <= limit; ++size) {
        const std::uint64_t blocks = universe - size + 1;
        std::vector<std::optional<std::vector<Vertex>>> found(blocks);
        std::atomic<std::uint64_t> first_hit{blocks};
        detail::for_each_block(blocks, workers, [&](unsigned w, std::size_t b) {
            if (b > first_hit.load(std::memory_order_relaxed)) return;
            found[b] = first_cut_in_block(*scanners[w], universe, size, b, h);
            if (found[b]) {
                auto current = first_hit.load();
                while (b < current && !first_hit.compare_exchange_weak(current, b)) {
                }
            }
        });
        for (auto& hit : found) {
            if (!hit) continue;
            KappaCertificate cert;
            cert.params = params;
            cert.h = h;
            cert.value = size;
            cert.witness = VertexSet(params, std::move(*hit));
            cert.method = SearchMethod::subset_oracle;
            cert.exhaustive = true;
            return cert;
        }
    }

    if (limit == largest_possible) {
        throw NoCutExists("no " + std::to_string(h) + "-extra vertex-cut exists in Q_" +
                          std::to_string(params.n) + "^" + std::to_string(params.k));
    }
    KappaCertificate cert;
    cert.params = params;
    cert.h = h;
    cert.value = limit + 1;
    cert.method = SearchMethod::subset_oracle;
    cert.exhaustive = false;
    return cert;
}

}  // namespace kcube
