#pragma once

// Monte Carlo fault injection: remove f uniformly random vertices and record
// how often the survivor graph falls apart, optionally keeping only trials
// whose survivors have no isolated vertex (or edge).

#include "kcube/torus.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace kcube {

enum class SurvivorCondition { none, no_isolated_vertex, no_isolated_vertex_or_edge };

std::string_view to_string(SurvivorCondition c);
SurvivorCondition survivor_condition_from_string(std::string_view text);

struct FaultModel {
    std::uint64_t fault_count = 0;
    SurvivorCondition condition = SurvivorCondition::none;
    std::uint64_t seed = 0;

    friend bool operator==(const FaultModel&, const FaultModel&) = default;
};

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;

    friend bool operator==(const WilsonInterval&, const WilsonInterval&) = default;
};

/// 95% Wilson score interval for `successes` out of `total`; [0, 1] when total is 0.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t total);

struct ReliabilityEstimate {
    std::uint64_t fault_count = 0;
    SurvivorCondition condition = SurvivorCondition::none;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t accepted = 0;
    std::uint64_t disconnected = 0;
    /// disconnected / accepted, or 0 when nothing was accepted.
    double point_estimate = 0.0;
    WilsonInterval wilson;
    /// Set on sweep rows where every trial failed the condition.
    bool condition_starved = false;

    double half_width() const { return (wilson.high - wilson.low) / 2.0; }
    friend bool operator==(const ReliabilityEstimate&, const ReliabilityEstimate&) = default;
};

/// The fault set of one trial: a uniform f-subset of V that depends only on
/// (seed, trial_index).
VertexSet sample_fault_set(const FaultModel& model, std::uint64_t trial_index, const TorusParams& params);

/// Throws ConditionStarved when no trial satisfies the condition.
ReliabilityEstimate estimate_disconnection(const Torus& torus, const FaultModel& model, std::uint64_t trials,
                                          unsigned worker_count = 1);

/// One row per f in [f_low, f_high]; fault size f uses seed derive_seed(seed, f).
/// Starved rows are kept with condition_starved set instead of throwing.
std::vector<ReliabilityEstimate> sweep_fault_sizes(const Torus& torus, std::uint64_t f_low, std::uint64_t f_high,
                                                   SurvivorCondition condition, std::uint64_t trials,
                                                   std::uint64_t seed, unsigned worker_count = 1);

}  // namespace kcube
