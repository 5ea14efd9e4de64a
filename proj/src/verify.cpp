#include "kcube/verify.hpp"

#include "kcube/cuts.hpp"
#include "kcube/detail/combinations.hpp"
#include "kcube/detail/parallel.hpp"
#include "kcube/errors.hpp"
#include "kcube/sampling.hpp"
#include "kcube/solver.hpp"

#include <algorithm>
#include <array>
#include <memory>

namespace kcube {

namespace {

constexpr std::array<std::pair<CheckId, std::string_view>, 6> check_names{{
    {CheckId::common_neighbors, "common-neighbors"},
    {CheckId::closed_neighborhood, "closed-nbhd"},
    {CheckId::edge_cut, "edge-cut"},
    {CheckId::path_cut, "path-cut"},
    {CheckId::theorem1, "thm1"},
    {CheckId::theorem2, "thm2"},
}};

constexpr std::uint64_t trials_per_block = 4096;

std::uint32_t min_dimension(CheckId id)
{
    switch (id) {
    case CheckId::common_neighbors:
        return 1;
    case CheckId::closed_neighborhood:
    case CheckId::edge_cut:
    case CheckId::theorem1:
        return 2;
    case CheckId::path_cut:
    case CheckId::theorem2:
        return 3;
    }
    return 1;
}

// Largest fault-set size covered by the conditional-connectivity checks.
std::uint64_t fault_bound(CheckId id, std::uint32_t n)
{
    return id == CheckId::theorem1 ? 4ull * n - 4 : 6ull * n - 8;
}

VertexSet single(const Torus& t, Vertex v) { return VertexSet(t.params(), {v}); }

struct Outcome {
    std::uint64_t cases = 0;
    std::uint64_t applicable = 0;
    std::optional<Counterexample> counterexample;

    void record(bool premise, std::optional<Counterexample> cx)
    {
        ++cases;
        if (premise) ++applicable;
        if (cx && !counterexample) counterexample = std::move(cx);
    }
};

// --- Per-case predicates ----------------------------------------------------
// Each returns a counterexample when the case violates the statement. They
// use only torus and cut primitives so recheck_counterexample can reuse them.

std::optional<Counterexample> common_neighbors_case(const Torus& t, Vertex x, Vertex y)
{
    const auto distance = t.lee_distance(x, y);
    const auto common = t.common_neighbors(x, y);
    const std::uint64_t expected = distance == 1 ? 1 : distance == 2 ? 2 : 0;
    if (common.size() == expected) return std::nullopt;
    return Counterexample{"Lee distance " + std::to_string(distance) + " but " + std::to_string(common.size()) +
                              " common neighbors (expected " + std::to_string(expected) + ")",
                          {{"x", single(t, x)}, {"y", single(t, y)}, {"common", common}}};
}

std::optional<Counterexample> closed_neighborhood_case(const Torus& t, SurvivorScanner& scanner, Vertex x)
{
    const auto closed = closed_neighborhood(t, single(t, x));
    const auto sizes = scanner.scan(closed.members());
    if (sizes.size() == 1) return std::nullopt;
    return Counterexample{"Q - A(x) has " + std::to_string(sizes.size()) + " components",
                          {{"x", single(t, x)}, {"A(x)", closed}}};
}

std::optional<Counterexample> edge_cut_case(const Torus& t, SurvivorScanner& scanner, Vertex u, Vertex v)
{
    const std::uint64_t n = t.params().n;
    const auto cut = open_neighborhood(t, VertexSet(t.params(), {u, v}));
    std::string reason;
    if (cut.size() != 4 * n - 3) {
        reason = "|N(u,v)| = " + std::to_string(cut.size()) + ", expected " + std::to_string(4 * n - 3);
    } else {
        scanner.scan(cut.members());
        const auto cls = scanner.classification();
        const auto rest = t.vertex_count() - cut.size() - 2;
        if (!cls.is_h_extra(1)) {
            reason = "N(u,v) is not a 1-extra cut (max_h = " + std::to_string(cls.max_h) + ")";
        } else if (cls.component_sizes.size() != 2) {
            reason = "Q - A(u,v) is disconnected";
        } else if (rest < 2) {
            reason = "|Q - A(u,v)| = " + std::to_string(rest) + " is below 2";
        }
    }
    if (reason.empty()) return std::nullopt;
    return Counterexample{reason, {{"u", single(t, u)}, {"v", single(t, v)}, {"S", cut}}};
}

std::optional<Counterexample> path_cut_case(const Torus& t, SurvivorScanner& scanner, Vertex u, Vertex v, Vertex w)
{
    const std::uint64_t n = t.params().n;
    const auto cut = open_neighborhood(t, VertexSet(t.params(), {u, v, w}));
    const auto x = t.common_neighbors(u, v);
    const auto y = t.common_neighbors(v, w);
    auto z = t.common_neighbors(u, w);
    std::vector<std::pair<std::string, VertexSet>> sets{
        {"u", single(t, u)}, {"v", single(t, v)}, {"w", single(t, w)}, {"S", cut}, {"x", x}, {"y", y}, {"z", z}};
    std::string reason;
    if (x.size() != 1 || y.size() != 1 || z.size() != 2 || !z.contains(v)) {
        reason = "common-neighbor counts differ from (1, 1, 2 including v)";
    } else {
        const Vertex xv = x[0];
        const Vertex yv = y[0];
        const Vertex zv = z[0] == v ? z[1] : z[0];
        const std::array<Vertex, 4> special{xv, yv, v, zv};
        for (std::size_t i = 0; i < special.size() && reason.empty(); ++i) {
            for (std::size_t j = i + 1; j < special.size(); ++j) {
                if (special[i] == special[j]) {
                    reason = "special neighbors x, y, v, z are not distinct";
                    break;
                }
            }
        }
        if (reason.empty() && cut.size() != 6 * n - 7) {
            reason = "|N(u,v,w)| = " + std::to_string(cut.size()) + ", expected " + std::to_string(6 * n - 7);
        }
        if (reason.empty()) {
            scanner.scan(cut.members());
            const auto cls = scanner.classification();
            const auto rest = t.vertex_count() - cut.size() - 3;
            if (!cls.is_h_extra(2)) {
                reason = "N(u,v,w) is not a 2-extra cut (max_h = " + std::to_string(cls.max_h) + ")";
            } else if (cls.component_sizes.size() != 2) {
                reason = "Q - A(u,v,w) is disconnected";
            } else if (rest <= 3) {
                reason = "|Q - A(u,v,w)| = " + std::to_string(rest) + " is not above 3";
            }
        }
    }
    if (reason.empty()) return std::nullopt;
    return Counterexample{reason, std::move(sets)};
}

// Premise: survivors exist, no isolated vertex (and no isolated edge when
// `forbid_edges`). Violation: premise holds but Q - S is disconnected.
std::pair<bool, bool> conditional_case(SurvivorScanner& scanner, std::span<const Vertex> removed, bool forbid_edges)
{
    const auto sizes = scanner.scan(removed);
    if (sizes.empty()) return {false, false};
    for (auto s : sizes) {
        if (s == 1 || (forbid_edges && s == 2)) return {false, false};
    }
    return {true, sizes.size() > 1};
}

std::optional<Counterexample> conditional_counterexample(const Torus& t, std::span<const Vertex> removed,
                                                         bool forbid_edges)
{
    return Counterexample{std::string("no isolated vertex") + (forbid_edges ? " or edge" : "") +
                              " survives, yet Q - S is disconnected",
                          {{"S", VertexSet(t.params(), std::vector<Vertex>(removed.begin(), removed.end()))}}};
}

// --- Case spaces --------------------------------------------------------------

class CaseSpace {
public:
    explicit CaseSpace(const Torus& t, CheckId id) : t_(t), id_(id) {}

    std::uint64_t exhaustive_blocks() const
    {
        const auto vertices = t_.vertex_count();
        if (is_conditional()) return 1 + bound() * vertices;  // empty set, then (size, first)
        return vertices;
    }

    void run_block(SurvivorScanner& scanner, std::uint64_t block, Outcome& out) const
    {
        const Vertex a{block};
        switch (id_) {
        case CheckId::common_neighbors:
            for (Code c = block + 1; c < t_.vertex_count(); ++c) {
                out.record(true, common_neighbors_case(t_, a, Vertex{c}));
            }
            break;
        case CheckId::closed_neighborhood:
            out.record(true, closed_neighborhood_case(t_, scanner, a));
            break;
        case CheckId::edge_cut:
            t_.for_each_neighbor(a, [&](Vertex b) {
                if (b > a) out.record(true, edge_cut_case(t_, scanner, a, b));
            });
            break;
        case CheckId::path_cut: {
            const auto nbrs = t_.neighbors(a);
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                    if (t_.is_adjacent(nbrs[i], nbrs[j])) continue;
                    out.record(true, path_cut_case(t_, scanner, nbrs[i], a, nbrs[j]));
                }
            }
            break;
        }
        case CheckId::theorem1:
        case CheckId::theorem2: {
            const bool forbid_edges = id_ == CheckId::theorem2;
            auto visit = [&](std::span<const Vertex> removed) {
                const auto [premise, violated] = conditional_case(scanner, removed, forbid_edges);
                out.record(premise, violated ? conditional_counterexample(t_, removed, forbid_edges) : std::nullopt);
                return true;
            };
            if (block == 0) {
                visit({});
                break;
            }
            const auto size = 1 + (block - 1) / t_.vertex_count();
            const auto first = (block - 1) % t_.vertex_count();
            detail::for_each_combination_from(t_.vertex_count(), size, first, visit);
            break;
        }
        }
    }

    void run_sample(SurvivorScanner& scanner, CounterRng& rng, Outcome& out) const
    {
        const auto vertices = t_.vertex_count();
        switch (id_) {
        case CheckId::common_neighbors: {
            const Vertex x{rng.below(vertices)};
            Vertex y{rng.below(vertices - 1)};
            if (y >= x) ++y.code;
            out.record(true, common_neighbors_case(t_, std::min(x, y), std::max(x, y)));
            break;
        }
        case CheckId::closed_neighborhood:
            out.record(true, closed_neighborhood_case(t_, scanner, Vertex{rng.below(vertices)}));
            break;
        case CheckId::edge_cut: {
            const Vertex u{rng.below(vertices)};
            const auto nbrs = t_.neighbors(u);
            const Vertex v = nbrs[rng.below(nbrs.size())];
            out.record(true, edge_cut_case(t_, scanner, std::min(u, v), std::max(u, v)));
            break;
        }
        case CheckId::path_cut: {
            const Vertex v{rng.below(vertices)};
            const auto nbrs = t_.neighbors(v);
            for (;;) {
                const auto i = rng.below(nbrs.size());
                auto j = rng.below(nbrs.size() - 1);
                if (j >= i) ++j;
                if (t_.is_adjacent(nbrs[i], nbrs[j])) continue;
                const auto lo = std::min(nbrs[i], nbrs[j]);
                const auto hi = std::max(nbrs[i], nbrs[j]);
                out.record(true, path_cut_case(t_, scanner, lo, v, hi));
                break;
            }
            break;
        }
        case CheckId::theorem1:
        case CheckId::theorem2: {
            const bool forbid_edges = id_ == CheckId::theorem2;
            const auto codes = sample_subset(rng, vertices, bound());
            std::vector<Vertex> removed;
            removed.reserve(codes.size());
            for (auto c : codes) removed.push_back(Vertex{c});
            const auto [premise, violated] = conditional_case(scanner, removed, forbid_edges);
            out.record(premise, violated ? conditional_counterexample(t_, removed, forbid_edges) : std::nullopt);
            break;
        }
        }
    }

private:
    bool is_conditional() const { return id_ == CheckId::theorem1 || id_ == CheckId::theorem2; }
    std::uint64_t bound() const { return fault_bound(id_, t_.params().n); }

    const Torus& t_;
    CheckId id_;
};

Outcome execute(const Torus& t, CheckId id, const VerifyMode& mode, const VerifyOptions& opts)
{
    const CaseSpace space(t, id);
    const unsigned workers = std::max(1u, opts.worker_count);
    std::vector<std::unique_ptr<SurvivorScanner>> scanners;
    for (unsigned w = 0; w < workers; ++w) scanners.push_back(std::make_unique<SurvivorScanner>(t));

    const bool sampled = mode.kind == VerifyMode::Kind::sampled;
    const std::uint64_t blocks =
        sampled ? (mode.trials + trials_per_block - 1) / trials_per_block : space.exhaustive_blocks();
    std::vector<Outcome> per_block(blocks);
    detail::for_each_block(blocks, workers, [&](unsigned w, std::size_t b) {
        if (!sampled) {
            space.run_block(*scanners[w], b, per_block[b]);
            return;
        }
        const auto begin = b * trials_per_block;
        const auto end = std::min(mode.trials, begin + trials_per_block);
        for (auto trial = begin; trial < end; ++trial) {
            CounterRng rng(mode.seed, trial);
            space.run_sample(*scanners[w], rng, per_block[b]);
        }
    });

    Outcome total;
    for (auto& o : per_block) {
        total.cases += o.cases;
        total.applicable += o.applicable;
        if (o.counterexample && !total.counterexample) total.counterexample = std::move(o.counterexample);
    }
    return total;
}

std::uint64_t binomial_sum(std::uint64_t universe, std::uint64_t max_size)
{
    return subsets_up_to(universe, max_size);
}

}  // namespace

// --- Names --------------------------------------------------------------------

std::string_view to_string(CheckId id)
{
    for (const auto& [check, name] : check_names) {
        if (check == id) return name;
    }
    return "unknown";
}

CheckId check_id_from_string(std::string_view text)
{
    for (const auto& [check, name] : check_names) {
        if (name == text) return check;
    }
    throw InvalidArgument("unknown check '" + std::string(text) + "'");
}

const std::vector<CheckId>& all_checks()
{
    static const std::vector<CheckId> checks{CheckId::common_neighbors, CheckId::closed_neighborhood,
                                             CheckId::edge_cut,         CheckId::path_cut,
                                             CheckId::theorem1,         CheckId::theorem2};
    return checks;
}

std::string_view to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::passed:
        return "pass";
    case CheckStatus::failed:
        return "fail";
    case CheckStatus::skipped:
        return "skip";
    }
    return "unknown";
}

CheckStatus check_status_from_string(std::string_view text)
{
    if (text == "pass") return CheckStatus::passed;
    if (text == "fail") return CheckStatus::failed;
    if (text == "skip") return CheckStatus::skipped;
    throw InvalidArgument("unknown check status '" + std::string(text) + "'");
}

const VertexSet* Counterexample::find(std::string_view name) const
{
    for (const auto& [label, set] : sets) {
        if (label == name) return &set;
    }
    return nullptr;
}

bool VerificationReport::same_outcome(const VerificationReport& other) const
{
    auto a = *this;
    auto b = other;
    a.elapsed = b.elapsed = std::chrono::duration<double>(0);
    return a == b;
}

// --- Entry points -------------------------------------------------------------

std::uint64_t exhaustive_case_count(CheckId id, std::uint32_t n)
{
    const TorusParams p{3, n};
    p.validate();
    const std::uint64_t v = p.vertex_count();
    switch (id) {
    case CheckId::common_neighbors:
        return v * (v - 1) / 2;
    case CheckId::closed_neighborhood:
        return v;
    case CheckId::edge_cut:
        return p.edge_count();
    case CheckId::path_cut:
        return v * 2ull * n * (n - 1ull);
    case CheckId::theorem1:
    case CheckId::theorem2:
        return binomial_sum(v, fault_bound(id, n));
    }
    return 0;
}

VerifyMode default_mode(CheckId id, std::uint32_t n, std::uint64_t trials, std::uint64_t seed)
{
    switch (id) {
    case CheckId::theorem1:
        return n == 2 ? VerifyMode::exhaustive() : VerifyMode::sampled(trials, seed);
    case CheckId::theorem2:
        return VerifyMode::sampled(trials, seed);
    default:
        return VerifyMode::exhaustive();
    }
}

namespace detail {

VerificationReport run_check_on(const Torus& torus, CheckId id, const VerifyMode& mode, const VerifyOptions& opts)
{
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.check = id;
    report.params = torus.params();
    report.mode = mode;

    const auto n = torus.params().n;
    if (n < min_dimension(id)) {
        report.status = CheckStatus::skipped;
        report.notice = std::string(to_string(id)) + " requires n >= " + std::to_string(min_dimension(id));
        return report;
    }
    if (mode.kind == VerifyMode::Kind::sampled && mode.trials == 0) {
        throw InvalidArgument("sampled verification needs at least one trial");
    }
    if (mode.kind == VerifyMode::Kind::exhaustive) {
        const auto blocks = CaseSpace(torus, id).exhaustive_blocks();
        std::uint64_t cases = 0;
        if (id == CheckId::theorem1 || id == CheckId::theorem2) {
            cases = binomial_sum(torus.vertex_count(), fault_bound(id, n));
        } else {
            cases = blocks;
        }
        if (cases > opts.exhaustive_ceiling) {
            throw SearchRefused("exhaustive " + std::string(to_string(id)) + " on n = " + std::to_string(n) +
                                " needs about " + std::to_string(cases) + " cases, above the ceiling of " +
                                std::to_string(opts.exhaustive_ceiling) + "; use sampled mode");
        }
    } else if (id == CheckId::theorem1 || id == CheckId::theorem2) {
        report.notice = "fault sets drawn uniformly among subsets of size exactly " +
                        std::to_string(fault_bound(id, n));
    }

    auto outcome = execute(torus, id, mode, opts);
    report.cases_checked = outcome.cases;
    report.cases_applicable = outcome.applicable;
    report.counterexample = std::move(outcome.counterexample);
    report.status = report.counterexample ? CheckStatus::failed : CheckStatus::passed;
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

}  // namespace detail

VerificationReport run_check(CheckId id, std::uint32_t n, const VerifyMode& mode, const VerifyOptions& opts)
{
    if (n < min_dimension(id)) {
        VerificationReport report;
        report.check = id;
        report.params = TorusParams{3, n};
        report.mode = mode;
        report.status = CheckStatus::skipped;
        report.notice = std::string(to_string(id)) + " requires n >= " + std::to_string(min_dimension(id));
        return report;
    }
    const Torus torus(TorusParams{3, n});
    return detail::run_check_on(torus, id, mode, opts);
}

VerificationReport verify_common_neighbors(std::uint32_t n, const VerifyMode& mode, const VerifyOptions& opts)
{
    return run_check(CheckId::common_neighbors, n, mode, opts);
}

VerificationReport verify_closed_neighborhood_connected(std::uint32_t n, const VerifyMode& mode,
                                                        const VerifyOptions& opts)
{
    return run_check(CheckId::closed_neighborhood, n, mode, opts);
}

VerificationReport verify_edge_cut_lemma(std::uint32_t n, const VerifyMode& mode, const VerifyOptions& opts)
{
    return run_check(CheckId::edge_cut, n, mode, opts);
}

VerificationReport verify_path_cut_lemma(std::uint32_t n, const VerifyMode& mode, const VerifyOptions& opts)
{
    return run_check(CheckId::path_cut, n, mode, opts);
}

VerificationReport verify_theorem1_conditional(std::uint32_t n, const VerifyMode& mode, const VerifyOptions& opts)
{
    return run_check(CheckId::theorem1, n, mode, opts);
}

VerificationReport verify_theorem2_conditional(std::uint32_t n, const VerifyMode& mode, const VerifyOptions& opts)
{
    return run_check(CheckId::theorem2, n, mode, opts);
}

// --- Rechecking ---------------------------------------------------------------

bool recheck_counterexample(const VerificationReport& report)
{
    if (report.status != CheckStatus::failed || !report.counterexample) return false;
    const auto& cx = *report.counterexample;
    const Torus t(report.params);
    auto one = [&](std::string_view name) -> std::optional<Vertex> {
        const auto* s = cx.find(name);
        if (!s || s->size() != 1) return std::nullopt;
        return (*s)[0];
    };
    switch (report.check) {
    case CheckId::common_neighbors: {
        const auto x = one("x");
        const auto y = one("y");
        if (!x || !y || *x == *y) return false;
        const auto common = set_intersection(t.neighbors(*x), t.neighbors(*y));
        const auto d = t.lee_distance(*x, *y);
        const std::uint64_t expected = d == 1 ? 1 : d == 2 ? 2 : 0;
        return common.size() != expected;
    }
    case CheckId::closed_neighborhood: {
        const auto x = one("x");
        if (!x) return false;
        return survivor_components(t, closed_neighborhood(t, VertexSet(t.params(), {*x}))).size() != 1;
    }
    case CheckId::edge_cut: {
        const auto u = one("u");
        const auto v = one("v");
        if (!u || !v || !t.is_adjacent(*u, *v)) return false;
        const std::uint64_t n = t.params().n;
        const auto cut = open_neighborhood(t, VertexSet(t.params(), {*u, *v}));
        if (cut.size() != 4 * n - 3) return true;
        const auto cls = classify_cut(t, cut);
        return !cls.is_h_extra(1) || cls.component_sizes.size() != 2;
    }
    case CheckId::path_cut: {
        const auto u = one("u");
        const auto v = one("v");
        const auto w = one("w");
        if (!u || !v || !w) return false;
        if (!t.is_adjacent(*u, *v) || !t.is_adjacent(*v, *w) || *u == *w || t.is_adjacent(*u, *w)) return false;
        const std::uint64_t n = t.params().n;
        const auto x = set_intersection(t.neighbors(*u), t.neighbors(*v));
        const auto y = set_intersection(t.neighbors(*v), t.neighbors(*w));
        const auto z = set_intersection(t.neighbors(*u), t.neighbors(*w));
        if (x.size() != 1 || y.size() != 1 || z.size() != 2 || !z.contains(*v)) return true;
        const Vertex zv = z[0] == *v ? z[1] : z[0];
        if (x[0] == y[0] || zv == x[0] || zv == y[0] || x[0] == *v || y[0] == *v) return true;
        const auto cut = open_neighborhood(t, VertexSet(t.params(), {*u, *v, *w}));
        if (cut.size() != 6 * n - 7) return true;
        const auto cls = classify_cut(t, cut);
        return !cls.is_h_extra(2) || cls.component_sizes.size() != 2;
    }
    case CheckId::theorem1:
    case CheckId::theorem2: {
        const auto* s = cx.find("S");
        if (!s || s->size() > fault_bound(report.check, t.params().n) || s->size() >= t.vertex_count()) {
            return false;
        }
        const auto cls = classify_cut(t, *s);
        const bool premise =
            !cls.isolated_vertex_present && (report.check == CheckId::theorem1 || !cls.isolated_edge_present);
        return premise && cls.is_cut;
    }
    }
    return false;
}

}  // namespace kcube
