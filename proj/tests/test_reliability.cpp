#include "kcube/errors.hpp"
#include "kcube/reliability.hpp"

#include "oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace kcube;

TEST_CASE("fault sets are uniform-sized, deterministic and in range")
{
    const TorusParams p{3, 3};
    const FaultModel model{7, SurvivorCondition::none, 99};
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        const auto s = sample_fault_set(model, trial, p);
        REQUIRE(s.size() == 7);
        REQUIRE(s == sample_fault_set(model, trial, p));
    }
    CHECK(sample_fault_set(model, 0, p) != sample_fault_set(model, 1, p));
    CHECK(sample_fault_set(model, 0, p) != sample_fault_set(FaultModel{7, SurvivorCondition::none, 100}, 0, p));
    CHECK(sample_fault_set(FaultModel{0, SurvivorCondition::none, 5}, 3, p).empty());
    CHECK_THROWS_AS(sample_fault_set(FaultModel{27, SurvivorCondition::none, 5}, 0, p), InvalidArgument);
}

TEST_CASE("every vertex is faulted about equally often")
{
    const TorusParams p{3, 2};
    const FaultModel model{3, SurvivorCondition::none, 1};
    std::vector<std::uint64_t> hits(9, 0);
    const std::uint64_t trials = 90'000;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        for (auto v : sample_fault_set(model, trial, p)) ++hits[v.code];
    }
    // each vertex is hit with probability 1/3; allow 5 standard deviations
    const double expected = trials / 3.0;
    const double sd = std::sqrt(trials * (1.0 / 3) * (2.0 / 3));
    for (auto h : hits) CHECK(std::abs(static_cast<double>(h) - expected) < 5 * sd);
}

TEST_CASE("removing all but one vertex never disconnects")
{
    const Torus t({3, 2});
    const auto est = estimate_disconnection(t, FaultModel{8, SurvivorCondition::none, 3}, 500);
    CHECK(est.accepted == 500);
    CHECK(est.disconnected == 0);
    CHECK(est.point_estimate == 0.0);
}

TEST_CASE("no disconnection below the classical connectivity")
{
    for (std::uint32_t n = 2; n <= 3; ++n) {
        const Torus t({3, n});
        for (std::uint64_t f = 0; f < 2 * n; ++f) {
            const auto est = estimate_disconnection(t, FaultModel{f, SurvivorCondition::none, 17}, 20'000);
            CHECK(est.disconnected == 0);
            CHECK(est.wilson.low == 0.0);
        }
    }
}

TEST_CASE("conditioned estimates stay at zero inside the theorem bounds on Q_3^3")
{
    const Torus t({3, 3});
    const auto t1 = estimate_disconnection(t, FaultModel{8, SurvivorCondition::no_isolated_vertex, 5}, 50'000);
    CHECK(t1.disconnected == 0);
    CHECK(t1.accepted < t1.trials);
    const auto t2 = estimate_disconnection(t, FaultModel{9, SurvivorCondition::no_isolated_vertex_or_edge, 5}, 50'000);
    CHECK(t2.disconnected == 0);
    CHECK(t2.accepted > 0);
}

TEST_CASE("Monte Carlo agrees with exact enumeration on Q_2^3")
{
    const Torus t({3, 2});
    const auto g = oracle::build(3, 2);
    for (std::uint64_t f : {4u, 5u, 6u}) {
        const double exact = oracle::exact_disconnection_probability(g, f);
        const auto est = estimate_disconnection(t, FaultModel{f, SurvivorCondition::none, 2024}, 100'000);
        CAPTURE(f);
        CHECK(std::abs(est.point_estimate - exact) <= 3 * est.half_width());
    }
}

TEST_CASE("conditioning excludes rejected trials")
{
    const Torus t({3, 2});
    const auto g = oracle::build(3, 2);
    // exact acceptance rate for five faults with no isolated survivor
    std::uint64_t total = 0, accepted = 0, disconnected = 0;
    oracle::for_each_subset(9, 5, [&](const std::vector<std::uint64_t>& set) {
        ++total;
        const auto sizes = oracle::component_sizes(g, oracle::mask_of(g, set));
        if (sizes.back() == 1) return true;
        ++accepted;
        if (sizes.size() > 1) ++disconnected;
        return true;
    });
    REQUIRE(disconnected > 0);
    const auto est = estimate_disconnection(t, FaultModel{5, SurvivorCondition::no_isolated_vertex, 8}, 100'000);
    const double rate = static_cast<double>(accepted) / total;
    const auto acc = wilson_interval(est.accepted, est.trials);
    CHECK(std::abs(static_cast<double>(est.accepted) / est.trials - rate) <= 3 * (acc.high - acc.low) / 2);
    const double exact = static_cast<double>(disconnected) / accepted;
    CHECK(std::abs(est.point_estimate - exact) <= 3 * est.half_width());
    CHECK(est.disconnected <= est.accepted);
}

TEST_CASE("a condition nothing meets is reported as starved")
{
    const Torus t({3, 2});
    // eight faults leave one vertex, which is always isolated
    CHECK_THROWS_AS(estimate_disconnection(t, FaultModel{8, SurvivorCondition::no_isolated_vertex, 1}, 100),
                    ConditionStarved);
    const auto rows = sweep_fault_sizes(t, 6, 8, SurvivorCondition::no_isolated_vertex, 1000, 1);
    REQUIRE(rows.size() == 3);
    CHECK(rows[2].condition_starved);
    CHECK(rows[2].accepted == 0);
    CHECK_THROWS_AS(estimate_disconnection(t, FaultModel{3, SurvivorCondition::none, 1}, 0), InvalidArgument);
}

TEST_CASE("sweeps: zero below 2n, first nonzero at or above 2n")
{
    const Torus t({3, 2});
    const auto rows = sweep_fault_sizes(t, 0, 8, SurvivorCondition::none, 20'000, 77);
    REQUIRE(rows.size() == 9);
    std::optional<std::uint64_t> first_nonzero;
    for (const auto& r : rows) {
        CHECK(r.seed == derive_seed(77, r.fault_count));
        if (r.fault_count < 4) CHECK(r.disconnected == 0);
        if (r.disconnected > 0 && !first_nonzero) first_nonzero = r.fault_count;
    }
    REQUIRE(first_nonzero);
    CHECK(*first_nonzero >= 4);
    CHECK(rows[4].disconnected > 0);
    CHECK_THROWS_AS(sweep_fault_sizes(t, 3, 2, SurvivorCondition::none, 10, 1), InvalidArgument);
    CHECK_THROWS_AS(sweep_fault_sizes(t, 0, 9, SurvivorCondition::none, 10, 1), InvalidArgument);
}

TEST_CASE("estimates are identical across worker counts")
{
    const Torus t({3, 3});
    const FaultModel model{10, SurvivorCondition::no_isolated_vertex_or_edge, 31337};
    const auto serial = estimate_disconnection(t, model, 50'000, 1);
    for (unsigned w : {2u, 8u}) CHECK(estimate_disconnection(t, model, 50'000, w) == serial);
    CHECK(sweep_fault_sizes(t, 5, 12, SurvivorCondition::none, 5'000, 9, 1) ==
          sweep_fault_sizes(t, 5, 12, SurvivorCondition::none, 5'000, 9, 8));
}

TEST_CASE("Wilson interval")
{
    const auto zero = wilson_interval(0, 1000);
    CHECK(zero.low == 0.0);
    CHECK(zero.high > 0.0);
    CHECK(zero.high < 0.01);
    const auto all = wilson_interval(1000, 1000);
    CHECK(all.high == 1.0);
    CHECK(all.low < 1.0);
    const auto half = wilson_interval(500, 1000);
    CHECK(half.low < 0.5);
    CHECK(half.high > 0.5);
    CHECK(std::abs((half.low + half.high) / 2 - 0.5) < 1e-12);
    // 95% Wilson bounds for 10 / 100
    const auto tenth = wilson_interval(10, 100);
    CHECK(tenth.low == doctest::Approx(0.05522).epsilon(1e-3));
    CHECK(tenth.high == doctest::Approx(0.17436).epsilon(1e-3));
    CHECK(wilson_interval(0, 0) == WilsonInterval{0.0, 1.0});
    for (std::uint64_t k = 0; k <= 50; ++k) {
        const auto w = wilson_interval(k, 50);
        const double p = k / 50.0;
        CHECK(w.low <= p);
        CHECK(w.high >= p);
        CHECK(w.low >= 0.0);
        CHECK(w.high <= 1.0);
    }
}

TEST_CASE("condition names round-trip")
{
    for (auto c : {SurvivorCondition::none, SurvivorCondition::no_isolated_vertex,
                   SurvivorCondition::no_isolated_vertex_or_edge}) {
        CHECK(survivor_condition_from_string(to_string(c)) == c);
    }
    CHECK_THROWS_AS(survivor_condition_from_string("no-faults"), InvalidArgument);
}
