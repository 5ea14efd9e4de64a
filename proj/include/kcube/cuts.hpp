#pragma once

// Neighborhoods, survivor-graph components and h-extra cut classification.
//
// A set S is an h-extra vertex-cut when Q - S is disconnected and every
// component of Q - S has more than h vertices. classify_cut reports the
// largest such h (min component size - 1) so one traversal answers every h.

#include "kcube/torus.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace kcube {

struct CutClassification {
    bool is_cut = false;
    std::vector<std::uint64_t> component_sizes;  ///< sorted descending
    int max_h = -1;
    bool isolated_vertex_present = false;
    bool isolated_edge_present = false;

    bool is_h_extra(int h) const { return is_cut && max_h >= h; }
    std::uint64_t survivor_count() const;

    friend bool operator==(const CutClassification&, const CutClassification&) = default;
};

/// A path u - v - w whose ends are not adjacent.
struct PathTriple {
    Vertex u;
    Vertex v;
    Vertex w;

    friend bool operator==(const PathTriple&, const PathTriple&) = default;
};

/// N(S): vertices outside S with a neighbor in S.
VertexSet open_neighborhood(const Torus& torus, const VertexSet& s);
/// A(S) = N(S) u S.
VertexSet closed_neighborhood(const Torus& torus, const VertexSet& s);

/// Components of Q - S ordered by smallest member code.
/// Throws EmptySurvivorGraph when S = V.
std::vector<VertexSet> survivor_components(const Torus& torus, const VertexSet& s);

/// Throws EmptySurvivorGraph when S = V.
CutClassification classify_cut(const Torus& torus, const VertexSet& s);

bool has_isolated_vertex(const Torus& torus, const VertexSet& s);
/// True iff some survivor component has exactly two vertices.
bool has_isolated_edge(const Torus& torus, const VertexSet& s);

/// N({u, v}) for an edge of Q_n^3; always 4n - 3 vertices.
VertexSet cut_of_edge(const Torus& torus, Vertex u, Vertex v);

/// Validates the path shape (two edges, non-adjacent distinct ends) and
/// returns the triple. Throws InvalidArgument otherwise.
PathTriple make_path_triple(const Torus& torus, Vertex u, Vertex v, Vertex w);
/// N({u, v, w}) for a valid PathTriple of Q_n^3 with n >= 3; 6n - 7 vertices.
VertexSet cut_of_path(const Torus& torus, const PathTriple& p);

/// Reusable traversal state for repeated survivor-graph scans over one torus.
///
/// Not thread-safe; give each worker its own scanner. All methods are
/// O(k^n * degree) and allocation-free after the first call.
class SurvivorScanner {
public:
    explicit SurvivorScanner(const Torus& torus);

    /// Labels the components of Q - removed. Returns the sizes in order of
    /// each component's smallest member. Duplicate entries in `removed` are
    /// tolerated.
    std::span<const std::uint64_t> scan(std::span<const Vertex> removed);

    /// After scan(): component index of v, or npos for removed vertices.
    std::uint32_t component_of(Vertex v) const;
    std::uint64_t removed_count() const { return removed_count_; }

    /// Classification of the last scan.
    CutClassification classification() const;

    static constexpr std::uint32_t npos = 0xffffffffu;

private:
    const Torus* torus_;
    std::vector<std::uint32_t> label_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<Vertex> queue_;
    std::vector<std::uint64_t> sizes_;
    std::uint64_t removed_count_ = 0;
};

}  // namespace kcube
