#include "kcube/errors.hpp"
#include "kcube/solver.hpp"

#include <algorithm>
#include <limits>

namespace kcube {

namespace {

// Split-vertex flow network: vertex x becomes in(x) = 2x -> out(x) = 2x + 1
// with capacity 1, and each undirected edge {x, y} becomes out(x) -> in(y)
// and out(y) -> in(x) with unbounded capacity, so minimum cuts consist of
// vertex arcs only.
class VertexFlowNetwork {
public:
    explicit VertexFlowNetwork(const Torus& torus) : vertices_(torus.vertex_count())
    {
        const auto nodes = 2 * vertices_;
        head_.assign(nodes, -1);
        const int unbounded = static_cast<int>(std::min<std::uint64_t>(vertices_, 1u << 30));
        for (Code x = 0; x < vertices_; ++x) add_arc(2 * x, 2 * x + 1, 1);
        for (Code x = 0; x < vertices_; ++x) {
            torus.for_each_neighbor(Vertex{x}, [&](Vertex y) { add_arc(2 * x + 1, 2 * y.code, unbounded); });
        }
        parent_arc_.assign(nodes, -1);
        queue_.reserve(nodes);
    }

    /// Internally vertex-disjoint s-t paths, stopping early once `stop_at` is
    /// reached (the caller only needs to know it is not smaller).
    std::uint64_t max_flow(Code s, Code t, std::uint64_t stop_at)
    {
        reset();
        const std::uint64_t source = 2 * s + 1;
        const std::uint64_t sink = 2 * t;
        std::uint64_t flow = 0;
        while (flow < stop_at && augment(source, sink)) ++flow;
        return flow;
    }

    /// After max_flow(s, t, inf): vertices whose in-node is reachable from the
    /// source in the residual graph but whose out-node is not.
    std::vector<Vertex> min_separator(Code s) const
    {
        std::vector<char> reach(head_.size(), 0);
        std::vector<std::uint64_t> stack{2 * s + 1};
        reach[2 * s + 1] = 1;
        while (!stack.empty()) {
            const auto node = stack.back();
            stack.pop_back();
            for (auto a = head_[node]; a != -1; a = arcs_[a].next) {
                if (arcs_[a].cap > 0 && !reach[arcs_[a].to]) {
                    reach[arcs_[a].to] = 1;
                    stack.push_back(arcs_[a].to);
                }
            }
        }
        std::vector<Vertex> cut;
        for (Code x = 0; x < vertices_; ++x) {
            if (x != s && reach[2 * x] && !reach[2 * x + 1]) cut.push_back(Vertex{x});
        }
        return cut;
    }

private:
    struct Arc {
        std::uint64_t to;
        std::int64_t next;
        int cap;
        int initial;
    };

    void add_arc(std::uint64_t from, std::uint64_t to, int cap)
    {
        arcs_.push_back({to, head_[from], cap, cap});
        head_[from] = static_cast<std::int64_t>(arcs_.size() - 1);
        arcs_.push_back({from, head_[to], 0, 0});
        head_[to] = static_cast<std::int64_t>(arcs_.size() - 1);
    }

    void reset()
    {
        for (auto& a : arcs_) a.cap = a.initial;
    }

    bool augment(std::uint64_t source, std::uint64_t sink)
    {
        std::fill(parent_arc_.begin(), parent_arc_.end(), -1);
        queue_.clear();
        queue_.push_back(source);
        parent_arc_[source] = -2;
        for (std::size_t headpos = 0; headpos < queue_.size(); ++headpos) {
            const auto node = queue_[headpos];
            for (auto a = head_[node]; a != -1; a = arcs_[a].next) {
                const auto to = arcs_[a].to;
                if (arcs_[a].cap > 0 && parent_arc_[to] == -1) {
                    parent_arc_[to] = a;
                    if (to == sink) {
                        for (auto node2 = sink; node2 != source;) {
                            const auto pa = parent_arc_[node2];
                            arcs_[pa].cap -= 1;
                            arcs_[pa ^ 1].cap += 1;
                            node2 = arcs_[pa ^ 1].to;
                        }
                        return true;
                    }
                    queue_.push_back(to);
                }
            }
        }
        return false;
    }

    std::uint64_t vertices_;
    std::vector<Arc> arcs_;
    std::vector<std::int64_t> head_;
    std::vector<std::int64_t> parent_arc_;
    std::vector<std::uint64_t> queue_;
};

struct FlowResult {
    std::uint64_t value;
    Code s;
    Code t;
};

void require_flow_ceiling(const Torus& torus, const SearchConfig& cfg)
{
    const auto n = torus.vertex_count();
    if (n > cfg.flow_vertex_ceiling) {
        throw SearchRefused("max-flow connectivity on " + std::to_string(n) + " vertices exceeds the ceiling of " +
                            std::to_string(cfg.flow_vertex_ceiling) + " (KCUBE_FLOW_MAX_VERTICES)");
    }
}

FlowResult min_pair_flow(const Torus& torus, VertexFlowNetwork& network)
{
    const auto n = torus.vertex_count();
    std::optional<FlowResult> best;
    for (Code s = 0; s < n; ++s) {
        for (Code t = s + 1; t < n; ++t) {
            if (torus.is_adjacent(Vertex{s}, Vertex{t})) continue;
            const auto limit = best ? best->value : std::numeric_limits<std::uint64_t>::max();
            const auto flow = network.max_flow(s, t, limit);
            if (!best || flow < best->value) best = FlowResult{flow, s, t};
        }
    }
    if (!best) throw NoCutExists("every pair of vertices is adjacent: the graph is complete and has no vertex-cut");
    return *best;
}

}  // namespace

std::uint64_t classic_connectivity_flow(const Torus& torus, const SearchConfig& cfg)
{
    require_flow_ceiling(torus, cfg);
    VertexFlowNetwork network(torus);
    return min_pair_flow(torus, network).value;
}

KappaCertificate kappa_flow(const Torus& torus, const SearchConfig& cfg)
{
    require_flow_ceiling(torus, cfg);
    VertexFlowNetwork network(torus);
    const auto result = min_pair_flow(torus, network);
    network.max_flow(result.s, result.t, std::numeric_limits<std::uint64_t>::max());
    KappaCertificate cert;
    cert.params = torus.params();
    cert.h = 0;
    cert.value = result.value;
    cert.witness = VertexSet(torus.params(), network.min_separator(result.s));
    cert.method = SearchMethod::max_flow;
    cert.exhaustive = true;
    return cert;
}

}  // namespace kcube
