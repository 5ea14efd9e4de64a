#include "kcube/cuts.hpp"

#include "kcube/errors.hpp"

#include <algorithm>
#include <numeric>

namespace kcube {

std::uint64_t CutClassification::survivor_count() const
{
    return std::accumulate(component_sizes.begin(), component_sizes.end(), std::uint64_t{0});
}

// --- SurvivorScanner --------------------------------------------------------

SurvivorScanner::SurvivorScanner(const Torus& torus)
    : torus_(&torus), label_(torus.vertex_count(), npos), stamp_(torus.vertex_count(), 0)
{
    queue_.reserve(torus.vertex_count());
}

std::span<const std::uint64_t> SurvivorScanner::scan(std::span<const Vertex> removed)
{
    // stamp 2e marks "removed in scan e", 2e+1 marks "visited in scan e".
    if (epoch_ >= 0x7ffffffeu) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 0;
    }
    ++epoch_;
    const std::uint32_t removed_mark = 2 * epoch_;
    const std::uint32_t visited_mark = 2 * epoch_ + 1;

    removed_count_ = 0;
    for (const auto& v : removed) {
        if (stamp_[v.code] != removed_mark) {
            stamp_[v.code] = removed_mark;
            label_[v.code] = npos;
            ++removed_count_;
        }
    }

    sizes_.clear();
    const auto count = torus_->vertex_count();
    for (Code start = 0; start < count; ++start) {
        if (stamp_[start] == removed_mark || stamp_[start] == visited_mark) continue;
        const auto index = static_cast<std::uint32_t>(sizes_.size());
        std::uint64_t size = 0;
        queue_.clear();
        queue_.push_back(Vertex{start});
        stamp_[start] = visited_mark;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const Vertex v = queue_[head];
            label_[v.code] = index;
            ++size;
            torus_->for_each_neighbor(v, [&](Vertex w) {
                auto& st = stamp_[w.code];
                if (st != removed_mark && st != visited_mark) {
                    st = visited_mark;
                    queue_.push_back(w);
                }
            });
        }
        sizes_.push_back(size);
    }
    return sizes_;
}

std::uint32_t SurvivorScanner::component_of(Vertex v) const
{
    if (stamp_[v.code] != 2 * epoch_ + 1) return npos;
    return label_[v.code];
}

CutClassification SurvivorScanner::classification() const
{
    CutClassification out;
    out.component_sizes = sizes_;
    std::sort(out.component_sizes.begin(), out.component_sizes.end(), std::greater<>());
    out.is_cut = out.component_sizes.size() >= 2;
    if (out.is_cut) out.max_h = static_cast<int>(out.component_sizes.back()) - 1;
    for (auto s : out.component_sizes) {
        if (s == 1) out.isolated_vertex_present = true;
        if (s == 2) out.isolated_edge_present = true;
    }
    return out;
}

// --- Neighborhoods ----------------------------------------------------------

VertexSet open_neighborhood(const Torus& torus, const VertexSet& s)
{
    std::vector<Vertex> out;
    for (const auto& v : s) {
        if (!torus.is_valid(v)) throw InvalidArgument("vertex out of range");
        torus.for_each_neighbor(v, [&](Vertex w) {
            if (!s.contains(w)) out.push_back(w);
        });
    }
    return VertexSet(torus.params(), std::move(out));
}

VertexSet closed_neighborhood(const Torus& torus, const VertexSet& s)
{
    return set_union(s, open_neighborhood(torus, s));
}

// --- Components -------------------------------------------------------------

namespace {

void require_survivors(const Torus& torus, const VertexSet& s)
{
    if (s.params() != torus.params() && !s.empty()) {
        throw InvalidArgument("vertex set belongs to a different torus");
    }
    if (s.size() >= torus.vertex_count()) {
        throw EmptySurvivorGraph("removing every vertex leaves an empty survivor graph");
    }
}

}  // namespace

std::vector<VertexSet> survivor_components(const Torus& torus, const VertexSet& s)
{
    require_survivors(torus, s);
    SurvivorScanner scanner(torus);
    const auto sizes = scanner.scan(s.members());
    std::vector<std::vector<Vertex>> members(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) members[i].reserve(sizes[i]);
    for (Code c = 0; c < torus.vertex_count(); ++c) {
        const auto label = scanner.component_of(Vertex{c});
        if (label != SurvivorScanner::npos) members[label].push_back(Vertex{c});
    }
    std::vector<VertexSet> out;
    out.reserve(members.size());
    for (auto& m : members) out.emplace_back(torus.params(), std::move(m));
    return out;
}

CutClassification classify_cut(const Torus& torus, const VertexSet& s)
{
    require_survivors(torus, s);
    SurvivorScanner scanner(torus);
    scanner.scan(s.members());
    return scanner.classification();
}

bool has_isolated_vertex(const Torus& torus, const VertexSet& s)
{
    if (s.size() >= torus.vertex_count()) return false;
    return classify_cut(torus, s).isolated_vertex_present;
}

bool has_isolated_edge(const Torus& torus, const VertexSet& s)
{
    if (s.size() >= torus.vertex_count()) return false;
    return classify_cut(torus, s).isolated_edge_present;
}

// --- Explicit constructions -------------------------------------------------

namespace {

void require_radix_three(const Torus& torus, const char* what)
{
    if (torus.params().k != 3) {
        throw InvalidArgument(std::string(what) + " is defined for k = 3 only");
    }
}

}  // namespace

VertexSet cut_of_edge(const Torus& torus, Vertex u, Vertex v)
{
    require_radix_three(torus, "cut_of_edge");
    if (!torus.is_valid(u) || !torus.is_valid(v) || !torus.is_adjacent(u, v)) {
        throw InvalidArgument("cut_of_edge requires an edge");
    }
    return open_neighborhood(torus, VertexSet(torus.params(), {u, v}));
}

PathTriple make_path_triple(const Torus& torus, Vertex u, Vertex v, Vertex w)
{
    if (!torus.is_valid(u) || !torus.is_valid(v) || !torus.is_valid(w)) {
        throw InvalidArgument("path vertex out of range");
    }
    if (!torus.is_adjacent(u, v) || !torus.is_adjacent(v, w)) {
        throw InvalidArgument("path triple must consist of two edges (u,v) and (v,w)");
    }
    if (u == w) throw InvalidArgument("path triple ends coincide");
    if (torus.is_adjacent(u, w)) {
        throw InvalidArgument("path triple ends " + torus.label(u) + " and " + torus.label(w) +
                              " are adjacent (the triple is a triangle)");
    }
    return PathTriple{u, v, w};
}

VertexSet cut_of_path(const Torus& torus, const PathTriple& p)
{
    require_radix_three(torus, "cut_of_path");
    if (torus.params().n < 3) throw InvalidArgument("cut_of_path requires n >= 3");
    make_path_triple(torus, p.u, p.v, p.w);
    return open_neighborhood(torus, VertexSet(torus.params(), {p.u, p.v, p.w}));
}

}  // namespace kcube
