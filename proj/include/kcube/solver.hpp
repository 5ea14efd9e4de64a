#pragma once

// Exact and closed-form h-extra connectivity of k-ary n-cubes.
//
// Two complete searches are provided and cross-check each other:
//
//  * kappa_subset_oracle walks vertex subsets by increasing size in
//    lexicographic order and stops at the first h-extra cut.
//  * kappa_boundary_enum enumerates connected vertex sets C and evaluates
//    S = N(C) plus every component of Q - A(C) with at most h vertices.
//    Every minimum h-extra cut S* has this form for each of its components C,
//    and its smallest component has at most (k^n - |S*|) / 2 <= (k^n - 1) / 2
//    vertices, so enumerating connected sets up to that size finds every
//    minimum cut. Both searches therefore return the same witness: the
//    lexicographically smallest minimum h-extra cut.

#include "kcube/torus.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace kcube {

enum class SearchMethod {
    subset_oracle,
    boundary_enum,
    formula,
    constructive_upper_bound,
    max_flow,
};

std::string_view to_string(SearchMethod m);
SearchMethod search_method_from_string(std::string_view text);

struct KappaCertificate {
    TorusParams params;
    int h = 0;
    /// kappa_h, or a strict lower bound (budget + 1) when no witness exists.
    std::uint64_t value = 0;
    std::optional<VertexSet> witness;
    SearchMethod method = SearchMethod::formula;
    /// True iff the method proves `value` is the minimum.
    bool exhaustive = false;

    friend bool operator==(const KappaCertificate&, const KappaCertificate&) = default;
};

struct SearchConfig {
    /// Largest cut size to look for. Defaults to the closed form when one applies.
    std::optional<std::uint64_t> max_cut_size;
    /// Cap on enumerated connected-set size (boundary search). A cap below the
    /// sound bound makes the result non-exhaustive.
    std::optional<std::uint64_t> max_side_size;
    unsigned worker_count = 1;

    /// Subset oracle refuses when sum_{s <= budget} C(k^n, s) exceeds this.
    std::uint64_t subset_ceiling = 200'000'000;
    /// Boundary search refuses when k^n exceeds this (3^9 by default)...
    std::uint64_t boundary_vertex_ceiling = 19'683;
    /// ...or when connected sets visited times bitset words exceeds this.
    std::uint64_t boundary_work_ceiling = 500'000'000;
    /// Max-flow cross-check refuses above this many vertices.
    std::uint64_t flow_vertex_ceiling = 243;

    /// Overrides ceilings from KCUBE_SUBSET_CEILING, KCUBE_BOUNDARY_MAX_VERTICES,
    /// KCUBE_BOUNDARY_WORK_CEILING and KCUBE_FLOW_MAX_VERTICES when set.
    void apply_environment_overrides();
    /// Throws InvalidArgument when a present budget is zero.
    void validate() const;
};

/// Closed-form value for k = 3: 2n (h = 0, n >= 2), 4n - 3 (h = 1, n >= 2),
/// 6n - 7 (h = 2, n >= 3). Returns nullopt outside that domain.
std::optional<std::uint64_t> formula_value(const TorusParams& params, int h);

/// Certificate from the closed form with its canonical witness: N(0) for
/// h = 0, N(0, e1) for h = 1, N(0, e1, e1 + e2) for h = 2. Throws
/// FormulaUnavailable outside the domain of formula_value.
KappaCertificate kappa_formula(const TorusParams& params, int h);

/// Builds the canonical witness and checks it by traversal; exhaustive = false.
KappaCertificate kappa_upper_bound(const Torus& torus, int h);

KappaCertificate kappa_subset_oracle(const Torus& torus, int h, const SearchConfig& cfg = {});
KappaCertificate kappa_boundary_enum(const Torus& torus, int h, const SearchConfig& cfg = {});

/// Classical connectivity as the minimum, over non-adjacent pairs, of the
/// number of internally vertex-disjoint paths (unit vertex capacity max-flow).
/// Throws NoCutExists for complete graphs.
std::uint64_t classic_connectivity_flow(const Torus& torus, const SearchConfig& cfg = {});
/// Same computation, reported as a certificate whose witness is a minimum
/// separator read off the residual graph of the minimizing pair.
KappaCertificate kappa_flow(const Torus& torus, const SearchConfig& cfg = {});

/// Sum of C(universe, s) for s in [0, max_size], saturating at UINT64_MAX.
std::uint64_t subsets_up_to(std::uint64_t universe, std::uint64_t max_size);

}  // namespace kcube
