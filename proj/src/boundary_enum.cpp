#include "kcube/detail/parallel.hpp"
#include "kcube/errors.hpp"
#include "kcube/solver.hpp"

#include <atomic>
#include <bit>
#include <limits>

namespace kcube {

namespace {

using Word = std::uint64_t;

// Connected-set enumeration over fixed-width bitsets. Each connected set C is
// visited exactly once, from its smallest vertex (the anchor): the extension
// set only admits vertices above the anchor that are not already in A(C) when
// they are first discovered (Wernicke's ESU scheme).
class BoundarySearch {
public:
    BoundarySearch(const Torus& torus, int h, std::uint64_t side_cap)
        : torus_(torus),
          h_(static_cast<std::uint64_t>(h)),
          vertices_(torus.vertex_count()),
          words_((vertices_ + 63) / 64),
          side_cap_(side_cap),
          adjacency_(vertices_ * words_, 0),
          full_(words_, 0)
    {
        for (Code c = 0; c < vertices_; ++c) {
            Word* row = &adjacency_[c * words_];
            torus.for_each_neighbor(Vertex{c}, [&](Vertex w) { row[w.code / 64] |= Word{1} << (w.code % 64); });
            full_[c / 64] |= Word{1} << (c % 64);
        }
    }

    std::size_t words() const { return words_; }
    std::uint64_t vertices() const { return vertices_; }

    struct Best {
        std::uint64_t size = std::numeric_limits<std::uint64_t>::max();
        std::vector<Word> mask;
    };

    struct Worker {
        std::vector<Word> arena;  // per depth: sub, closed, ext
        std::vector<Word> above;  // bits strictly above the anchor
        std::vector<Word> alive, seen, frontier, next, cut;
        Best best;
        std::uint64_t unflushed_work = 0;
    };

    struct Shared {
        std::atomic<std::uint64_t> best;
        std::atomic<std::uint64_t> work{0};
        std::uint64_t work_ceiling;
    };

    Worker make_worker() const
    {
        Worker w;
        w.above.assign(words_, 0);
        w.alive.assign(words_, 0);
        w.seen.assign(words_, 0);
        w.frontier.assign(words_, 0);
        w.next.assign(words_, 0);
        w.cut.assign(words_, 0);
        return w;
    }

    /// Enumerates every connected set anchored at `anchor`.
    void run_anchor(Worker& w, Code anchor, Shared& shared) const
    {
        std::fill(w.above.begin(), w.above.end(), 0);
        for (std::size_t i = 0; i < words_; ++i) {
            const auto lo = i * 64;
            if (lo > anchor) {
                w.above[i] = full_[i];
            } else if (anchor < lo + 64) {
                const auto bit = anchor - lo;
                w.above[i] = bit == 63 ? 0 : (full_[i] & (~Word{0} << (bit + 1)));
            }
        }
        ensure_depth(w, 1);
        Word* sub = level(w, 1, 0);
        Word* closed = level(w, 1, 1);
        Word* ext = level(w, 1, 2);
        const Word* adj = row(anchor);
        for (std::size_t i = 0; i < words_; ++i) {
            sub[i] = 0;
            closed[i] = adj[i];
            ext[i] = adj[i] & w.above[i];
        }
        sub[anchor / 64] |= Word{1} << (anchor % 64);
        closed[anchor / 64] |= Word{1} << (anchor % 64);
        extend(w, 1, shared);
        flush(w, shared);
    }

    /// Sound bound on the smaller side, min with any user cap.
    std::uint64_t side_cap() const { return side_cap_; }

private:
    Word* level(Worker& w, std::uint64_t depth, int which) const
    {
        return &w.arena[((depth - 1) * 3 + static_cast<std::uint64_t>(which)) * words_];
    }

    void ensure_depth(Worker& w, std::uint64_t depth) const
    {
        const auto need = depth * 3 * words_;
        if (w.arena.size() < need) w.arena.resize(need);
    }

    const Word* row(Code c) const { return &adjacency_[c * words_]; }

    static std::uint64_t popcount(const Word* a, std::size_t n)
    {
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i]));
        return total;
    }

    // Publishes this worker's visit count. The total visited is independent of
    // scheduling, so refusing once it passes the ceiling is deterministic.
    static void flush(Worker& w, Shared& shared)
    {
        const auto total = shared.work.fetch_add(w.unflushed_work) + w.unflushed_work;
        w.unflushed_work = 0;
        if (total > shared.work_ceiling) {
            throw SearchRefused("boundary search exceeded the work ceiling of " +
                                std::to_string(shared.work_ceiling) + " (KCUBE_BOUNDARY_WORK_CEILING)");
        }
    }

    void extend(Worker& w, std::uint64_t depth, Shared& shared) const
    {
        w.unflushed_work += words_;
        if (w.unflushed_work >= (1u << 20)) flush(w, shared);
        evaluate(w, depth, shared.best);
        if (depth >= side_cap_) return;
        ensure_depth(w, depth + 1);
        for (;;) {
            // Pointers are re-derived after ensure_depth may have grown the arena.
            Word* ext = level(w, depth, 2);
            std::size_t wi = 0;
            while (wi < words_ && ext[wi] == 0) ++wi;
            if (wi == words_) return;
            const auto bit = static_cast<unsigned>(std::countr_zero(ext[wi]));
            ext[wi] &= ext[wi] - 1;
            const Code v = wi * 64 + bit;

            const Word* sub = level(w, depth, 0);
            const Word* closed = level(w, depth, 1);
            Word* nsub = level(w, depth + 1, 0);
            Word* nclosed = level(w, depth + 1, 1);
            Word* next_ext = level(w, depth + 1, 2);
            const Word* adj = row(v);
            for (std::size_t i = 0; i < words_; ++i) {
                nsub[i] = sub[i];
                nclosed[i] = closed[i] | adj[i];
                next_ext[i] = ext[i] | (adj[i] & ~closed[i] & w.above[i]);
            }
            nsub[v / 64] |= Word{1} << (v % 64);
            extend(w, depth + 1, shared);
        }
    }

    // S = N(C) plus the components of Q - A(C) with at most h vertices.
    void evaluate(Worker& w, std::uint64_t depth, std::atomic<std::uint64_t>& shared_best) const
    {
        if (depth < h_ + 1) return;
        const Word* closed = level(w, depth, 1);
        const Word* sub = level(w, depth, 0);
        const auto closed_count = popcount(closed, words_);
        const auto boundary = closed_count - depth;
        const auto bound = shared_best.load(std::memory_order_relaxed);
        if (boundary > bound) return;
        // C must be able to be the smaller side: 2|C| + |N(C)| <= k^n.
        if (2 * depth + boundary > vertices_) return;

        for (std::size_t i = 0; i < words_; ++i) {
            w.alive[i] = full_[i] & ~closed[i];
            w.seen[i] = 0;
            w.cut[i] = closed[i] & ~sub[i];
        }
        std::uint64_t cut_size = boundary;
        bool has_large = false;
        for (std::size_t wi = 0; wi < words_; ++wi) {
            for (;;) {
                const Word remaining = w.alive[wi] & ~w.seen[wi];
                if (remaining == 0) break;
                const Code start = wi * 64 + static_cast<unsigned>(std::countr_zero(remaining));
                // Flood the component of `start` within alive.
                std::fill(w.frontier.begin(), w.frontier.end(), 0);
                w.frontier[start / 64] |= Word{1} << (start % 64);
                w.seen[start / 64] |= Word{1} << (start % 64);
                std::uint64_t comp_size = 1;
                std::vector<Word>& comp = w.next;  // reused as the component mask
                std::fill(comp.begin(), comp.end(), 0);
                comp[start / 64] |= Word{1} << (start % 64);
                bool grew = true;
                while (grew) {
                    grew = false;
                    for (std::size_t fi = 0; fi < words_; ++fi) {
                        Word bits = w.frontier[fi];
                        w.frontier[fi] = 0;
                        while (bits) {
                            const Code x = fi * 64 + static_cast<unsigned>(std::countr_zero(bits));
                            bits &= bits - 1;
                            const Word* adj = row(x);
                            for (std::size_t i = 0; i < words_; ++i) {
                                const Word fresh = adj[i] & w.alive[i] & ~w.seen[i];
                                if (fresh) {
                                    w.seen[i] |= fresh;
                                    comp[i] |= fresh;
                                    w.frontier[i] |= fresh;
                                    comp_size += static_cast<std::uint64_t>(std::popcount(fresh));
                                    grew = true;
                                }
                            }
                        }
                    }
                }
                if (comp_size > h_) {
                    has_large = true;
                } else {
                    for (std::size_t i = 0; i < words_; ++i) w.cut[i] |= comp[i];
                    cut_size += comp_size;
                }
            }
        }
        if (!has_large) return;
        if (cut_size > bound) return;
        if (cut_size < w.best.size || (cut_size == w.best.size && mask_lex_less(w.cut, w.best.mask))) {
            w.best.size = cut_size;
            w.best.mask = w.cut;
            auto current = shared_best.load();
            while (cut_size < current && !shared_best.compare_exchange_weak(current, cut_size)) {
            }
        }
    }

public:
    /// For equal-size sets: the one holding the smallest differing element
    /// comes first in lexicographic order of sorted members.
    static bool mask_lex_less(const std::vector<Word>& a, const std::vector<Word>& b)
    {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const Word diff = a[i] ^ b[i];
            if (diff) return (a[i] & (diff & -diff)) != 0;
        }
        return false;
    }

    VertexSet to_set(const std::vector<Word>& mask) const
    {
        std::vector<Vertex> members;
        for (std::size_t wi = 0; wi < words_; ++wi) {
            Word bits = mask[wi];
            while (bits) {
                members.push_back(Vertex{wi * 64 + static_cast<unsigned>(std::countr_zero(bits))});
                bits &= bits - 1;
            }
        }
        return VertexSet(torus_.params(), std::move(members));
    }

private:
    const Torus& torus_;
    std::uint64_t h_;
    std::uint64_t vertices_;
    std::size_t words_;
    std::uint64_t side_cap_;
    std::vector<Word> adjacency_;
    std::vector<Word> full_;
};

}  // namespace

KappaCertificate kappa_boundary_enum(const Torus& torus, int h, const SearchConfig& cfg)
{
    cfg.validate();
    if (h < 0) throw InvalidArgument("h must be non-negative");
    const auto& params = torus.params();
    const std::uint64_t vertices = torus.vertex_count();
    if (vertices > cfg.boundary_vertex_ceiling) {
        throw SearchRefused("boundary search on " + std::to_string(vertices) + " vertices exceeds the ceiling of " +
                            std::to_string(cfg.boundary_vertex_ceiling) + " (KCUBE_BOUNDARY_MAX_VERTICES)");
    }

    const std::uint64_t sound_cap = (vertices - 1) / 2;
    const bool truncated = cfg.max_side_size && *cfg.max_side_size < sound_cap;
    const std::uint64_t side_cap = truncated ? *cfg.max_side_size : sound_cap;

    auto budget = cfg.max_cut_size;
    if (!budget) budget = formula_value(params, h);
    const std::uint64_t initial_best = budget ? *budget : std::numeric_limits<std::uint64_t>::max();

    const unsigned workers = std::max(1u, cfg.worker_count);
    const BoundarySearch search(torus, h, side_cap);
    std::vector<BoundarySearch::Worker> states;
    for (unsigned w = 0; w < workers; ++w) states.push_back(search.make_worker());
    BoundarySearch::Shared shared{{initial_best}, {0}, cfg.boundary_work_ceiling};
    detail::for_each_block(vertices, workers,
                           [&](unsigned w, std::size_t anchor) { search.run_anchor(states[w], anchor, shared); });

    const BoundarySearch::Best* winner = nullptr;
    for (const auto& st : states) {
        if (st.best.mask.empty()) continue;
        if (!winner || st.best.size < winner->size ||
            (st.best.size == winner->size && BoundarySearch::mask_lex_less(st.best.mask, winner->mask))) {
            winner = &st.best;
        }
    }

    KappaCertificate cert;
    cert.params = params;
    cert.h = h;
    cert.method = SearchMethod::boundary_enum;
    if (winner) {
        cert.value = winner->size;
        cert.witness = search.to_set(winner->mask);
        cert.exhaustive = !truncated;
        return cert;
    }
    if (truncated) {
        throw SearchRefused("no cut found with connected sides capped at " + std::to_string(side_cap) +
                            " vertices; the cap is below the sound bound " + std::to_string(sound_cap));
    }
    if (!budget) {
        throw NoCutExists("no " + std::to_string(h) + "-extra vertex-cut exists in Q_" + std::to_string(params.n) +
                          "^" + std::to_string(params.k));
    }
    cert.value = *budget + 1;
    cert.exhaustive = false;
    return cert;
}

}  // namespace kcube
