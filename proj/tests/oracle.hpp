#pragma once

// Brute-force reference implementations used only by the tests. Nothing here
// calls into the library: the graph is rebuilt from digit vectors and every
// quantity is computed the slow, obvious way.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using Digits = std::vector<std::uint32_t>;

struct Graph {
    std::uint32_t k = 3;
    std::uint32_t n = 1;
    std::uint64_t size = 0;
    std::vector<std::vector<std::uint64_t>> adj;

    Digits digits(std::uint64_t code) const
    {
        Digits d(n);
        for (std::uint32_t i = n; i-- > 0;) {
            d[i] = static_cast<std::uint32_t>(code % k);
            code /= k;
        }
        return d;
    }

    std::uint64_t code(const Digits& d) const
    {
        std::uint64_t c = 0;
        for (auto x : d) c = c * k + x;
        return c;
    }

    bool adjacent(std::uint64_t a, std::uint64_t b) const
    {
        return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
    }
};

inline Graph build(std::uint32_t k, std::uint32_t n)
{
    Graph g;
    g.k = k;
    g.n = n;
    g.size = 1;
    for (std::uint32_t i = 0; i < n; ++i) g.size *= k;
    g.adj.resize(g.size);
    for (std::uint64_t v = 0; v < g.size; ++v) {
        std::set<std::uint64_t> nb;
        const auto d = g.digits(v);
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t delta : {1u, k - 1}) {
                auto e = d;
                e[i] = (e[i] + delta) % k;
                if (e != d) nb.insert(g.code(e));
            }
        }
        g.adj[v].assign(nb.begin(), nb.end());
    }
    return g;
}

inline std::uint32_t lee_distance(const Graph& g, std::uint64_t a, std::uint64_t b)
{
    const auto x = g.digits(a);
    const auto y = g.digits(b);
    std::uint32_t d = 0;
    for (std::uint32_t i = 0; i < g.n; ++i) {
        const auto diff = (y[i] + g.k - x[i]) % g.k;
        d += std::min(diff, g.k - diff);
    }
    return d;
}

inline std::vector<std::uint32_t> bfs_distances(const Graph& g, std::uint64_t from)
{
    std::vector<std::uint32_t> dist(g.size, UINT32_MAX);
    std::vector<std::uint64_t> queue{from};
    dist[from] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (auto w : g.adj[queue[i]]) {
            if (dist[w] == UINT32_MAX) {
                dist[w] = dist[queue[i]] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

/// Sizes of the components of G - removed, largest first.
inline std::vector<std::uint64_t> component_sizes(const Graph& g, const std::vector<bool>& removed)
{
    std::vector<bool> seen = removed;
    std::vector<std::uint64_t> sizes;
    for (std::uint64_t s = 0; s < g.size; ++s) {
        if (seen[s]) continue;
        std::vector<std::uint64_t> stack{s};
        seen[s] = true;
        std::uint64_t count = 0;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            ++count;
            for (auto w : g.adj[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        sizes.push_back(count);
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

inline std::vector<bool> mask_of(const Graph& g, const std::vector<std::uint64_t>& set)
{
    std::vector<bool> m(g.size, false);
    for (auto v : set) m[v] = true;
    return m;
}

inline bool is_h_extra_cut(const Graph& g, const std::vector<std::uint64_t>& set, int h)
{
    const auto sizes = component_sizes(g, mask_of(g, set));
    if (sizes.size() < 2) return false;
    return sizes.back() > static_cast<std::uint64_t>(h);
}

inline std::vector<std::uint64_t> open_neighborhood(const Graph& g, const std::vector<std::uint64_t>& set)
{
    std::set<std::uint64_t> out;
    for (auto v : set) out.insert(g.adj[v].begin(), g.adj[v].end());
    for (auto v : set) out.erase(v);
    return {out.begin(), out.end()};
}

/// Calls fn(subset) for every subset of [0, size) of exactly `count` members,
/// in lexicographic order. Stops when fn returns false.
inline bool for_each_subset(std::uint64_t size, std::uint64_t count,
                            const std::function<bool(const std::vector<std::uint64_t>&)>& fn)
{
    std::vector<std::uint64_t> cur;
    std::function<bool(std::uint64_t)> rec = [&](std::uint64_t start) {
        if (cur.size() == count) return fn(cur);
        for (std::uint64_t v = start; v + (count - cur.size()) <= size; ++v) {
            cur.push_back(v);
            if (!rec(v + 1)) return false;
            cur.pop_back();
        }
        return true;
    };
    return rec(0);
}

struct MinCut {
    std::uint64_t size = 0;
    std::vector<std::uint64_t> lex_first;
};

/// Minimum h-extra cut by trying every subset in order of size; nullopt when
/// no h-extra cut exists at all.
inline std::optional<MinCut> min_h_extra_cut(const Graph& g, int h)
{
    for (std::uint64_t s = 1; s < g.size; ++s) {
        std::optional<MinCut> found;
        for_each_subset(g.size, s, [&](const std::vector<std::uint64_t>& set) {
            if (!is_h_extra_cut(g, set, h)) return true;
            found = MinCut{s, set};
            return false;
        });
        if (found) return found;
    }
    return std::nullopt;
}

/// Exact fraction of f-subsets whose removal leaves a disconnected graph.
inline double exact_disconnection_probability(const Graph& g, std::uint64_t f)
{
    std::uint64_t total = 0;
    std::uint64_t bad = 0;
    for_each_subset(g.size, f, [&](const std::vector<std::uint64_t>& set) {
        ++total;
        if (component_sizes(g, mask_of(g, set)).size() > 1) ++bad;
        return true;
    });
    return static_cast<double>(bad) / static_cast<double>(total);
}

}  // namespace oracle
