#pragma once

// The k-ary n-cube Q_n^k as an implicit graph over radix-k digit strings.
//
// A vertex x1 x2 ... xn is stored as the integer code sum(x_i * k^(n-i)),
// so x1 is the most significant digit and dimension i (1-based, counted from
// the left) is read with a fixed stride of k^(n-i). Two vertices are adjacent
// iff their Lee distance is 1, i.e. they differ by +-1 (mod k) in exactly one
// digit.

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kcube {

using Code = std::uint64_t;

struct TorusParams {
    std::uint32_t k = 3;  ///< radix
    std::uint32_t n = 1;  ///< dimension count

    /// Throws InvalidArgument unless k >= 2, n >= 1 and k^n fits in 64 bits.
    void validate() const;
    std::uint64_t vertex_count() const;
    /// 2n for k >= 3; n for k = 2 where the +1 and -1 neighbors coincide.
    std::uint32_t degree() const { return k == 2 ? n : 2 * n; }
    std::uint64_t edge_count() const { return vertex_count() * degree() / 2; }

    friend bool operator==(const TorusParams&, const TorusParams&) = default;
};

/// One node of Q_n^k, identified by its canonical code in [0, k^n).
struct Vertex {
    Code code = 0;

    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// A sorted, duplicate-free set of vertices of one torus.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(TorusParams params) : params_(params) {}
    /// Sorts and deduplicates; throws InvalidArgument on out-of-range codes.
    VertexSet(TorusParams params, std::vector<Vertex> members);
    static VertexSet from_codes(TorusParams params, std::span<const Code> codes);

    const TorusParams& params() const { return params_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(Vertex v) const;
    bool is_subset_of(const VertexSet& other) const;

    std::span<const Vertex> members() const { return members_; }
    std::vector<Code> codes() const;
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }
    const Vertex& operator[](std::size_t i) const { return members_[i]; }

    /// Inserts keeping the set sorted. Returns false if already present.
    bool insert(Vertex v);

    friend VertexSet set_union(const VertexSet& a, const VertexSet& b);
    friend VertexSet set_difference(const VertexSet& a, const VertexSet& b);
    friend VertexSet set_intersection(const VertexSet& a, const VertexSet& b);

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    /// Lexicographic order on the sorted code sequence.
    friend bool lex_less(const VertexSet& a, const VertexSet& b);

private:
    TorusParams params_{};
    std::vector<Vertex> members_;
};

/// Split of Q_n^k along one dimension into k copies of Q_{n-1}^k.
///
/// Part j holds every vertex whose digit at `dim` equals j. The i-edges of
/// that dimension form a perfect matching between any two parts: the match of
/// v in part j is v with its `dim` digit replaced by j.
class Decomposition {
public:
    Decomposition(TorusParams params, std::uint32_t dim);

    const TorusParams& params() const { return params_; }
    std::uint32_t dim() const { return dim_; }
    std::uint32_t part_count() const { return params_.k; }

    std::uint32_t part_of(Vertex v) const;
    VertexSet part(std::uint32_t j) const;
    /// The unique matched vertex of v in part j (v itself when j = part_of(v)).
    Vertex matched(Vertex v, std::uint32_t j) const;
    /// True iff (u, v) is an edge joining two different parts.
    bool is_matching_edge(Vertex u, Vertex v) const;

private:
    TorusParams params_;
    std::uint32_t dim_;
    Code stride_;
};

class Torus {
public:
    /// Adjacency lists are precomputed when k^n is at most this many vertices.
    static constexpr std::uint64_t adjacency_cache_limit = std::uint64_t{1} << 20;

    explicit Torus(TorusParams params);

    const TorusParams& params() const { return params_; }
    std::uint64_t vertex_count() const { return vertex_count_; }
    std::uint32_t degree() const { return params_.degree(); }
    bool is_valid(Vertex v) const { return v.code < vertex_count_; }

    Vertex encode(std::span<const std::uint32_t> digits) const;
    std::vector<std::uint32_t> decode(Vertex v) const;
    /// Digit at a 1-based position counted from the left.
    std::uint32_t digit(Vertex v, std::uint32_t position) const;
    /// Replaces the digit at a 1-based position.
    Vertex with_digit(Vertex v, std::uint32_t position, std::uint32_t value) const;

    /// Digit-string rendering, e.g. "012". Radices above 10 use 0-9a-z and
    /// radices above 36 fall back to dot-separated decimal digits.
    std::string label(Vertex v) const;
    Vertex parse(std::string_view text) const;

    std::uint64_t lee_weight(Vertex x) const;
    std::uint64_t lee_distance(Vertex x, Vertex y) const;
    std::uint32_t differing_digits(Vertex x, Vertex y) const;

    VertexSet neighbors(Vertex v) const;
    bool is_adjacent(Vertex u, Vertex v) const;
    /// Throws InvalidArgument when u == v.
    VertexSet common_neighbors(Vertex u, Vertex v) const;

    /// Throws InvalidArgument when n = 1 or dim is outside [1, n].
    Decomposition decompose(std::uint32_t dim) const;

    /// Calls fn(Vertex) for each distinct neighbor of v in ascending digit
    /// position order (+1 before -1). No allocation.
    template <class Fn>
    void for_each_neighbor(Vertex v, Fn&& fn) const
    {
        if (!adjacency_.empty()) {
            const auto deg = degree();
            const Vertex* row = adjacency_.data() + v.code * deg;
            for (std::uint32_t i = 0; i < deg; ++i) fn(row[i]);
            return;
        }
        for_each_neighbor_uncached(v, std::function<void(Vertex)>(fn));
    }

    /// Cached adjacency row; empty when the torus is above the cache limit.
    std::span<const Vertex> adjacency_row(Vertex v) const;

private:
    void for_each_neighbor_uncached(Vertex v, const std::function<void(Vertex)>& fn) const;
    void require_valid(Vertex v) const;

    TorusParams params_;
    std::uint64_t vertex_count_;
    std::vector<Code> strides_;  // strides_[i] = k^(n-1-i), position i+1
    std::vector<Vertex> adjacency_;
};

/// The k-1 matched vertices of v in the other parts of d.
VertexSet pair_vertices(Vertex v, const Decomposition& d);

}  // namespace kcube
