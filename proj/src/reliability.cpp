#include "kcube/reliability.hpp"

#include "kcube/cuts.hpp"
#include "kcube/detail/parallel.hpp"
#include "kcube/errors.hpp"
#include "kcube/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace kcube {

namespace {

constexpr std::uint64_t trials_per_block = 8192;
constexpr double z95 = 1.959963984540054;

struct Tally {
    std::uint64_t accepted = 0;
    std::uint64_t disconnected = 0;
};

void require_valid(const FaultModel& model, const TorusParams& params)
{
    params.validate();
    if (model.fault_count >= params.vertex_count()) {
        throw InvalidArgument("fault count " + std::to_string(model.fault_count) + " must be below the vertex count " +
                              std::to_string(params.vertex_count()));
    }
}

std::vector<Vertex> draw(const FaultModel& model, std::uint64_t trial_index, std::uint64_t vertices)
{
    CounterRng rng(model.seed, trial_index);
    const auto codes = sample_subset(rng, vertices, model.fault_count);
    std::vector<Vertex> out;
    out.reserve(codes.size());
    for (auto c : codes) out.push_back(Vertex{c});
    return out;
}

bool meets(SurvivorCondition condition, std::span<const std::uint64_t> sizes)
{
    for (auto s : sizes) {
        if (condition != SurvivorCondition::none && s == 1) return false;
        if (condition == SurvivorCondition::no_isolated_vertex_or_edge && s == 2) return false;
    }
    return true;
}

}  // namespace

std::string_view to_string(SurvivorCondition c)
{
    switch (c) {
    case SurvivorCondition::none:
        return "none";
    case SurvivorCondition::no_isolated_vertex:
        return "no-isolated-vertex";
    case SurvivorCondition::no_isolated_vertex_or_edge:
        return "no-isolated-vertex-or-edge";
    }
    return "unknown";
}

SurvivorCondition survivor_condition_from_string(std::string_view text)
{
    for (auto c : {SurvivorCondition::none, SurvivorCondition::no_isolated_vertex,
                   SurvivorCondition::no_isolated_vertex_or_edge}) {
        if (to_string(c) == text) return c;
    }
    throw InvalidArgument("unknown survivor condition '" + std::string(text) + "'");
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t total)
{
    if (total == 0) return {};
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z95 * z95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double spread = z95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, std::min(p, center - spread)), std::min(1.0, std::max(p, center + spread))};
}

VertexSet sample_fault_set(const FaultModel& model, std::uint64_t trial_index, const TorusParams& params)
{
    require_valid(model, params);
    return VertexSet(params, draw(model, trial_index, params.vertex_count()));
}

ReliabilityEstimate estimate_disconnection(const Torus& torus, const FaultModel& model, std::uint64_t trials,
                                          unsigned worker_count)
{
    require_valid(model, torus.params());
    if (trials == 0) throw InvalidArgument("at least one trial is required");

    const unsigned workers = std::max(1u, worker_count);
    std::vector<std::unique_ptr<SurvivorScanner>> scanners;
    for (unsigned w = 0; w < workers; ++w) scanners.push_back(std::make_unique<SurvivorScanner>(torus));

    const std::uint64_t blocks = (trials + trials_per_block - 1) / trials_per_block;
    std::vector<Tally> tallies(blocks);
    detail::for_each_block(blocks, workers, [&](unsigned w, std::size_t b) {
        const auto end = std::min(trials, (b + 1) * trials_per_block);
        for (auto trial = b * trials_per_block; trial < end; ++trial) {
            const auto removed = draw(model, trial, torus.vertex_count());
            const auto sizes = scanners[w]->scan(removed);
            if (!meets(model.condition, sizes)) continue;
            ++tallies[b].accepted;
            if (sizes.size() > 1) ++tallies[b].disconnected;
        }
    });

    ReliabilityEstimate est;
    est.fault_count = model.fault_count;
    est.condition = model.condition;
    est.seed = model.seed;
    est.trials = trials;
    for (const auto& t : tallies) {
        est.accepted += t.accepted;
        est.disconnected += t.disconnected;
    }
    if (est.accepted == 0) {
        throw ConditionStarved("none of " + std::to_string(trials) + " trials with " +
                               std::to_string(model.fault_count) + " faults met the condition " +
                               std::string(to_string(model.condition)));
    }
    est.point_estimate = static_cast<double>(est.disconnected) / static_cast<double>(est.accepted);
    est.wilson = wilson_interval(est.disconnected, est.accepted);
    return est;
}

std::vector<ReliabilityEstimate> sweep_fault_sizes(const Torus& torus, std::uint64_t f_low, std::uint64_t f_high,
                                                   SurvivorCondition condition, std::uint64_t trials,
                                                   std::uint64_t seed, unsigned worker_count)
{
    if (f_low > f_high) throw InvalidArgument("empty fault range");
    if (f_high >= torus.vertex_count()) {
        throw InvalidArgument("fault count " + std::to_string(f_high) + " must be below the vertex count " +
                              std::to_string(torus.vertex_count()));
    }
    std::vector<ReliabilityEstimate> rows;
    for (auto f = f_low; f <= f_high; ++f) {
        const FaultModel model{f, condition, derive_seed(seed, f)};
        try {
            rows.push_back(estimate_disconnection(torus, model, trials, worker_count));
        } catch (const ConditionStarved&) {
            ReliabilityEstimate row;
            row.fault_count = f;
            row.condition = condition;
            row.seed = model.seed;
            row.trials = trials;
            row.condition_starved = true;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace kcube
