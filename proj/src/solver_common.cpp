#include "kcube/cuts.hpp"
#include "kcube/errors.hpp"
#include "kcube/solver.hpp"

#include <array>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace kcube {

namespace {

constexpr std::array<std::pair<SearchMethod, std::string_view>, 5> method_names{{
    {SearchMethod::subset_oracle, "subset-oracle"},
    {SearchMethod::boundary_enum, "boundary-enum"},
    {SearchMethod::formula, "formula"},
    {SearchMethod::constructive_upper_bound, "constructive-upper-bound"},
    {SearchMethod::max_flow, "max-flow"},
}};

void override_from_env(const char* name, std::uint64_t& target)
{
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return;
    try {
        std::size_t used = 0;
        const auto value = std::stoull(raw, &used);
        if (used != std::char_traits<char>::length(raw) || value == 0) throw std::invalid_argument(raw);
        target = value;
    } catch (const std::exception&) {
        throw InvalidArgument(std::string("environment variable ") + name + " must be a positive integer");
    }
}

}  // namespace

std::string_view to_string(SearchMethod m)
{
    for (const auto& [method, name] : method_names) {
        if (method == m) return name;
    }
    return "unknown";
}

SearchMethod search_method_from_string(std::string_view text)
{
    for (const auto& [method, name] : method_names) {
        if (name == text) return method;
    }
    throw InvalidArgument("unknown search method '" + std::string(text) + "'");
}

void SearchConfig::apply_environment_overrides()
{
    override_from_env("KCUBE_SUBSET_CEILING", subset_ceiling);
    override_from_env("KCUBE_BOUNDARY_MAX_VERTICES", boundary_vertex_ceiling);
    override_from_env("KCUBE_BOUNDARY_WORK_CEILING", boundary_work_ceiling);
    override_from_env("KCUBE_FLOW_MAX_VERTICES", flow_vertex_ceiling);
}

void SearchConfig::validate() const
{
    if (max_cut_size && *max_cut_size == 0) throw InvalidArgument("cut-size budget must be positive");
    if (max_side_size && *max_side_size == 0) throw InvalidArgument("side-size cap must be positive");
    if (worker_count == 0) throw InvalidArgument("worker count must be positive");
}

std::uint64_t subsets_up_to(std::uint64_t universe, std::uint64_t max_size)
{
    constexpr auto saturated = std::numeric_limits<std::uint64_t>::max();
    unsigned __int128 total = 1;  // s = 0
    unsigned __int128 term = 1;
    for (std::uint64_t s = 1; s <= max_size && s <= universe; ++s) {
        term = term * (universe - s + 1) / s;
        total += term;
        if (total >= saturated || term >= saturated) return saturated;
    }
    return static_cast<std::uint64_t>(total);
}

std::optional<std::uint64_t> formula_value(const TorusParams& params, int h)
{
    if (params.k != 3) return std::nullopt;
    const std::uint64_t n = params.n;
    switch (h) {
    case 0:
        // Q_1^3 is a triangle: no vertex-cut exists.
        if (n >= 2) return 2 * n;
        break;
    case 1:
        if (n >= 2) return 4 * n - 3;
        break;
    case 2:
        if (n >= 3) return 6 * n - 7;
        break;
    default:
        break;
    }
    return std::nullopt;
}

namespace {

VertexSet canonical_witness(const Torus& torus, int h)
{
    const auto& p = torus.params();
    const Vertex origin{0};
    const Vertex e1 = torus.with_digit(origin, 1, 1);
    switch (h) {
    case 0:
        return torus.neighbors(origin);
    case 1:
        return cut_of_edge(torus, origin, e1);
    case 2:
        return cut_of_path(torus, make_path_triple(torus, origin, e1, torus.with_digit(e1, 2, 1)));
    default:
        throw FormulaUnavailable("no canonical witness for h = " + std::to_string(h) + " on k = " +
                                 std::to_string(p.k));
    }
}

void require_formula_domain(const TorusParams& params, int h)
{
    params.validate();
    if (!formula_value(params, h)) {
        throw FormulaUnavailable("no closed form for k = " + std::to_string(params.k) + ", n = " +
                                 std::to_string(params.n) + ", h = " + std::to_string(h) +
                                 " (known: k = 3 with h = 0, n >= 2; h = 1, n >= 2; h = 2, n >= 3)");
    }
}

}  // namespace

KappaCertificate kappa_formula(const TorusParams& params, int h)
{
    require_formula_domain(params, h);
    const Torus torus(params);
    KappaCertificate cert;
    cert.params = params;
    cert.h = h;
    cert.value = *formula_value(params, h);
    cert.witness = canonical_witness(torus, h);
    cert.method = SearchMethod::formula;
    cert.exhaustive = true;
    return cert;
}

KappaCertificate kappa_upper_bound(const Torus& torus, int h)
{
    require_formula_domain(torus.params(), h);
    auto witness = canonical_witness(torus, h);
    const auto cls = classify_cut(torus, witness);
    if (!cls.is_h_extra(h)) {
        throw std::logic_error("canonical witness failed classification as a " + std::to_string(h) +
                               "-extra cut");
    }
    KappaCertificate cert;
    cert.params = torus.params();
    cert.h = h;
    cert.value = witness.size();
    cert.witness = std::move(witness);
    cert.method = SearchMethod::constructive_upper_bound;
    cert.exhaustive = false;
    return cert;
}

}  // namespace kcube
