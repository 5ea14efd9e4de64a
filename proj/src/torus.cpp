#include "kcube/torus.hpp"

#include "kcube/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace kcube {

namespace {

constexpr std::string_view digit_alphabet = "0123456789abcdefghijklmnopqrstuvwxyz";

}  // namespace

// --- TorusParams ------------------------------------------------------------

void TorusParams::validate() const
{
    if (k < 2) throw InvalidArgument("radix k must be at least 2, got " + std::to_string(k));
    if (n < 1) throw InvalidArgument("dimension n must be at least 1");
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (count > std::numeric_limits<std::uint64_t>::max() / k) {
            throw InvalidArgument("vertex count " + std::to_string(k) + "^" + std::to_string(n) +
                                  " does not fit in 64 bits");
        }
        count *= k;
    }
}

std::uint64_t TorusParams::vertex_count() const
{
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < n; ++i) count *= k;
    return count;
}

// --- VertexSet --------------------------------------------------------------

VertexSet::VertexSet(TorusParams params, std::vector<Vertex> members)
    : params_(params), members_(std::move(members))
{
    const auto count = params_.vertex_count();
    for (const auto& v : members_) {
        if (v.code >= count) {
            throw InvalidArgument("vertex code " + std::to_string(v.code) + " out of range for k^n = " +
                                  std::to_string(count));
        }
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::from_codes(TorusParams params, std::span<const Code> codes)
{
    std::vector<Vertex> members;
    members.reserve(codes.size());
    for (auto c : codes) members.push_back(Vertex{c});
    return VertexSet(params, std::move(members));
}

bool VertexSet::contains(Vertex v) const
{
    return std::binary_search(members_.begin(), members_.end(), v);
}

bool VertexSet::is_subset_of(const VertexSet& other) const
{
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

std::vector<Code> VertexSet::codes() const
{
    std::vector<Code> out;
    out.reserve(members_.size());
    for (const auto& v : members_) out.push_back(v.code);
    return out;
}

bool VertexSet::insert(Vertex v)
{
    if (v.code >= params_.vertex_count()) {
        throw InvalidArgument("vertex code " + std::to_string(v.code) + " out of range");
    }
    auto it = std::lower_bound(members_.begin(), members_.end(), v);
    if (it != members_.end() && *it == v) return false;
    members_.insert(it, v);
    return true;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b)
{
    VertexSet out(a.params_);
    std::set_union(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end(),
                   std::back_inserter(out.members_));
    return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b)
{
    VertexSet out(a.params_);
    std::set_difference(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end(),
                        std::back_inserter(out.members_));
    return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b)
{
    VertexSet out(a.params_);
    std::set_intersection(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end(),
                          std::back_inserter(out.members_));
    return out;
}

bool lex_less(const VertexSet& a, const VertexSet& b)
{
    return std::lexicographical_compare(a.members_.begin(), a.members_.end(), b.members_.begin(),
                                        b.members_.end());
}

// --- Decomposition ----------------------------------------------------------

Decomposition::Decomposition(TorusParams params, std::uint32_t dim) : params_(params), dim_(dim), stride_(1)
{
    params_.validate();
    if (params_.n < 2) throw InvalidArgument("no decomposition exists for n = 1");
    if (dim < 1 || dim > params_.n) {
        throw InvalidArgument("split dimension " + std::to_string(dim) + " outside [1, " +
                              std::to_string(params_.n) + "]");
    }
    for (std::uint32_t i = dim; i < params_.n; ++i) stride_ *= params_.k;
}

std::uint32_t Decomposition::part_of(Vertex v) const
{
    return static_cast<std::uint32_t>((v.code / stride_) % params_.k);
}

VertexSet Decomposition::part(std::uint32_t j) const
{
    if (j >= params_.k) throw InvalidArgument("part index out of range");
    std::vector<Vertex> members;
    const auto count = params_.vertex_count();
    members.reserve(count / params_.k);
    for (Code c = 0; c < count; ++c) {
        if ((c / stride_) % params_.k == j) members.push_back(Vertex{c});
    }
    return VertexSet(params_, std::move(members));
}

Vertex Decomposition::matched(Vertex v, std::uint32_t j) const
{
    if (j >= params_.k) throw InvalidArgument("part index out of range");
    const auto current = part_of(v);
    return Vertex{v.code - current * stride_ + j * stride_};
}

bool Decomposition::is_matching_edge(Vertex u, Vertex v) const
{
    if (part_of(u) == part_of(v)) return false;
    // Same digits outside `dim`, and the `dim` digits differ by +-1 mod k.
    if (matched(u, part_of(v)) != v) return false;
    const auto du = part_of(u);
    const auto dv = part_of(v);
    const auto k = params_.k;
    return (du + 1) % k == dv || (dv + 1) % k == du;
}

VertexSet pair_vertices(Vertex v, const Decomposition& d)
{
    if (v.code >= d.params().vertex_count()) throw InvalidArgument("vertex out of range");
    std::vector<Vertex> out;
    const auto own = d.part_of(v);
    for (std::uint32_t j = 0; j < d.part_count(); ++j) {
        if (j != own) out.push_back(d.matched(v, j));
    }
    return VertexSet(d.params(), std::move(out));
}

// --- Torus ------------------------------------------------------------------

Torus::Torus(TorusParams params) : params_(params), vertex_count_(0)
{
    params_.validate();
    vertex_count_ = params_.vertex_count();
    strides_.assign(params_.n, 1);
    for (std::uint32_t i = params_.n - 1; i > 0; --i) strides_[i - 1] = strides_[i] * params_.k;

    if (vertex_count_ <= adjacency_cache_limit) {
        const auto deg = degree();
        adjacency_.reserve(vertex_count_ * deg);
        for (Code c = 0; c < vertex_count_; ++c) {
            for_each_neighbor_uncached(Vertex{c}, [&](Vertex w) { adjacency_.push_back(w); });
        }
    }
}

void Torus::require_valid(Vertex v) const
{
    if (!is_valid(v)) {
        throw InvalidArgument("vertex code " + std::to_string(v.code) + " out of range for k^n = " +
                              std::to_string(vertex_count_));
    }
}

Vertex Torus::encode(std::span<const std::uint32_t> digits) const
{
    if (digits.size() != params_.n) {
        throw InvalidArgument("expected " + std::to_string(params_.n) + " digits, got " +
                              std::to_string(digits.size()));
    }
    Code code = 0;
    for (auto d : digits) {
        if (d >= params_.k) {
            throw InvalidArgument("digit " + std::to_string(d) + " out of range for radix " +
                                  std::to_string(params_.k));
        }
        code = code * params_.k + d;
    }
    return Vertex{code};
}

std::vector<std::uint32_t> Torus::decode(Vertex v) const
{
    require_valid(v);
    std::vector<std::uint32_t> digits(params_.n);
    for (std::uint32_t i = 0; i < params_.n; ++i) {
        digits[i] = static_cast<std::uint32_t>((v.code / strides_[i]) % params_.k);
    }
    return digits;
}

std::uint32_t Torus::digit(Vertex v, std::uint32_t position) const
{
    if (position < 1 || position > params_.n) throw InvalidArgument("digit position out of range");
    return static_cast<std::uint32_t>((v.code / strides_[position - 1]) % params_.k);
}

Vertex Torus::with_digit(Vertex v, std::uint32_t position, std::uint32_t value) const
{
    if (value >= params_.k) throw InvalidArgument("digit value out of range");
    const auto old = digit(v, position);
    const auto stride = strides_[position - 1];
    return Vertex{v.code - old * stride + value * stride};
}

std::string Torus::label(Vertex v) const
{
    const auto digits = decode(v);
    std::string out;
    if (params_.k <= digit_alphabet.size()) {
        for (auto d : digits) out.push_back(digit_alphabet[d]);
        return out;
    }
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0) out.push_back('.');
        out += std::to_string(digits[i]);
    }
    return out;
}

Vertex Torus::parse(std::string_view text) const
{
    std::vector<std::uint32_t> digits;
    if (params_.k <= digit_alphabet.size()) {
        for (char ch : text) {
            auto pos = digit_alphabet.find(ch);
            if (pos == std::string_view::npos) {
                throw InvalidArgument("invalid digit '" + std::string(1, ch) + "' in vertex label");
            }
            digits.push_back(static_cast<std::uint32_t>(pos));
        }
    } else {
        std::istringstream in{std::string(text)};
        std::string part;
        while (std::getline(in, part, '.')) {
            try {
                digits.push_back(static_cast<std::uint32_t>(std::stoul(part)));
            } catch (const std::exception&) {
                throw InvalidArgument("invalid digit '" + part + "' in vertex label");
            }
        }
    }
    return encode(digits);
}

std::uint64_t Torus::lee_weight(Vertex x) const
{
    std::uint64_t weight = 0;
    for (auto d : decode(x)) weight += std::min(d, params_.k - d);
    return weight;
}

std::uint64_t Torus::lee_distance(Vertex x, Vertex y) const
{
    const auto dx = decode(x);
    const auto dy = decode(y);
    std::uint64_t weight = 0;
    for (std::uint32_t i = 0; i < params_.n; ++i) {
        const auto diff = (dy[i] + params_.k - dx[i]) % params_.k;
        weight += std::min(diff, params_.k - diff);
    }
    return weight;
}

std::uint32_t Torus::differing_digits(Vertex x, Vertex y) const
{
    const auto dx = decode(x);
    const auto dy = decode(y);
    std::uint32_t count = 0;
    for (std::uint32_t i = 0; i < params_.n; ++i) count += dx[i] != dy[i] ? 1 : 0;
    return count;
}

void Torus::for_each_neighbor_uncached(Vertex v, const std::function<void(Vertex)>& fn) const
{
    const auto k = params_.k;
    for (std::uint32_t i = 0; i < params_.n; ++i) {
        const auto stride = strides_[i];
        const auto d = static_cast<std::uint32_t>((v.code / stride) % k);
        const Code base = v.code - d * stride;
        const auto up = (d + 1) % k;
        const auto down = (d + k - 1) % k;
        fn(Vertex{base + up * stride});
        if (down != up) fn(Vertex{base + down * stride});
    }
}

std::span<const Vertex> Torus::adjacency_row(Vertex v) const
{
    if (adjacency_.empty()) return {};
    require_valid(v);
    return {adjacency_.data() + v.code * degree(), degree()};
}

VertexSet Torus::neighbors(Vertex v) const
{
    require_valid(v);
    std::vector<Vertex> out;
    out.reserve(degree());
    for_each_neighbor(v, [&](Vertex w) { out.push_back(w); });
    return VertexSet(params_, std::move(out));
}

bool Torus::is_adjacent(Vertex u, Vertex v) const
{
    require_valid(u);
    require_valid(v);
    return lee_distance(u, v) == 1;
}

VertexSet Torus::common_neighbors(Vertex u, Vertex v) const
{
    require_valid(u);
    require_valid(v);
    if (u == v) throw InvalidArgument("common_neighbors requires two distinct vertices");
    return set_intersection(neighbors(u), neighbors(v));
}

Decomposition Torus::decompose(std::uint32_t dim) const
{
    return Decomposition(params_, dim);
}

}  // namespace kcube
