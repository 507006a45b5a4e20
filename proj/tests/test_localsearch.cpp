#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "twopt/localsearch.hpp"
#include "twopt/rng.hpp"

using namespace twopt;

namespace {

Instance crossing_corners() {
    return Instance::from_points(InstanceKind::Euclidean,
                                 {{0.0, 0.0}, {1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}});
}

Instance circle_instance(int n) {
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
        const double angle = 2.0 * M_PI * i / n;
        pts.push_back({0.5 + 0.4 * std::cos(angle), 0.5 + 0.4 * std::sin(angle)});
    }
    return Instance::from_points(InstanceKind::Euclidean, std::move(pts));
}

} // namespace

TEST_CASE("uncrossing the square converges in one iteration") {
    const Instance inst = crossing_corners();
    auto [tour, trace] = run_ce_localsearch(inst, Tour::identity(4));
    CHECK(trace.total_iterations() == 1);
    CHECK(trace.final_length == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(is_local_optimum(inst, tour));
    CHECK(!is_local_optimum(inst, Tour::identity(4)));
}

TEST_CASE("points in convex position visited in order are locally optimal") {
    const Instance inst = circle_instance(24);
    CHECK(is_local_optimum(inst, Tour::identity(24)));
}

TEST_CASE("every convergence ends in a local optimum with positive recorded gains") {
    Rng rng(77);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 20 + static_cast<int>(rng.below(60));
        const Instance inst =
            trial % 2 == 0 ? gen_uniform(n, rng.next()) : gen_euclidean(n, rng.next());
        auto [tour, trace] = run_ce_localsearch(inst, random_tour(n, rng.next()));
        CHECK(is_local_optimum(inst, tour));

        double previous = trace.initial_length;
        double gains = 0.0;
        for (const auto& it : trace.iterations) {
            CHECK(it.gain > 0.0);
            CHECK(it.length < previous);
            previous = it.length;
            gains += it.gain;
        }
        CHECK(trace.final_length ==
              doctest::Approx(trace.initial_length - gains).epsilon(1e-9));
    }
}

TEST_CASE("a pure exhaustive run averages exactly n(n-1)/2 moves per iteration") {
    const int n = 40;
    const Instance inst = gen_uniform(n, 12);
    auto [tour, trace] = run_ce_localsearch(inst, random_tour(n, 13));
    REQUIRE(trace.total_iterations() > 0);
    CHECK(trace.total_evaluations ==
          static_cast<std::uint64_t>(trace.total_iterations()) * (n * (n - 1) / 2));
}

TEST_CASE("hybrid walks the exhaustive trajectory") {
    Rng rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 40 + static_cast<int>(rng.below(60));
        const Instance inst =
            trial % 2 == 0 ? gen_uniform(n, rng.next()) : gen_euclidean(n, rng.next());
        const Tour start = random_tour(n, rng.next());
        auto [ce_tour, ce_trace] = run_ce_localsearch(inst, start);

        for (double beta : {0.3, 0.5}) {
            HybridConfig cfg;
            cfg.beta = beta;
            auto [hy_tour, hy_trace] = run_hybrid_localsearch(inst, start, cfg);
            REQUIRE(hy_trace.total_iterations() == ce_trace.total_iterations());
            for (int k = 0; k < ce_trace.total_iterations(); ++k) {
                const auto& ce_it = ce_trace.iterations[static_cast<std::size_t>(k)];
                const auto& hy_it = hy_trace.iterations[static_cast<std::size_t>(k)];
                CHECK(std::abs(hy_it.gain - ce_it.gain) <=
                      1e-9 * std::max(1.0, std::abs(ce_it.gain)));
                CHECK(std::abs(hy_it.length - ce_it.length) <=
                      1e-6 * std::max(1.0, std::abs(ce_it.length)));
            }
            CHECK(hy_trace.final_length ==
                  doctest::Approx(ce_trace.final_length).epsilon(1e-9));
        }
    }
}

TEST_CASE("hybrid with variants reaches the same local optimum") {
    const int n = 60;
    const Instance inst = gen_uniform(n, 3);
    const Tour start = random_tour(n, 4);
    auto [ce_tour, ce_trace] = run_ce_localsearch(inst, start);

    for (bool strong : {false, true}) {
        for (bool dedup : {false, true}) {
            HybridConfig cfg;
            cfg.beta = 0.4;
            cfg.variant = SearchVariant{strong, dedup};
            auto [tour, trace] = run_hybrid_localsearch(inst, start, cfg);
            CHECK(trace.total_iterations() == ce_trace.total_iterations());
            CHECK(trace.final_length == doctest::Approx(ce_trace.final_length).epsilon(1e-9));
        }
    }
}

TEST_CASE("the switch trips once the per-iteration budget is hit and is permanent") {
    const int n = 120;
    const Instance inst = gen_uniform(n, 5);
    const Tour start = random_tour(n, 6);
    const double budget_fraction = 0.3;

    HybridConfig cfg;
    cfg.beta = budget_fraction;
    auto [tour, trace] = run_hybrid_localsearch(inst, start, cfg);
    REQUIRE(trace.switch_iteration.has_value());
    const int s = *trace.switch_iteration;
    const double budget = budget_fraction * n * (n - 1);
    for (const auto& it : trace.iterations) {
        if (it.iteration < s)
            CHECK((!it.used_ce && static_cast<double>(it.moves_evaluated) < budget));
        if (it.iteration == s) {
            CHECK(!it.used_ce);
            CHECK(static_cast<double>(it.moves_evaluated) >= budget);
        }
        if (it.iteration > s)
            CHECK(it.used_ce);
    }
}

TEST_CASE("smaller budgets never switch later") {
    const int n = 100;
    const Instance inst = gen_uniform(n, 9);
    const Tour start = random_tour(n, 10);
    int previous_switch = 0;
    for (double beta : {0.3, 0.4, 0.5}) {
        HybridConfig cfg;
        cfg.beta = beta;
        auto [tour, trace] = run_hybrid_localsearch(inst, start, cfg);
        const int s = trace.switch_iteration.value_or(trace.total_iterations() + 1);
        CHECK(s >= previous_switch);
        previous_switch = s;
    }
}

TEST_CASE("disabling the switch still reaches the exhaustive optimum") {
    const int n = 50;
    const Instance inst = gen_euclidean(n, 30);
    const Tour start = random_tour(n, 31);
    auto [ce_tour, ce_trace] = run_ce_localsearch(inst, start);

    HybridConfig cfg;
    cfg.switch_enabled = false;
    auto [tour, trace] = run_hybrid_localsearch(inst, start, cfg);
    CHECK(!trace.switch_iteration.has_value());
    CHECK(trace.final_length == doctest::Approx(ce_trace.final_length).epsilon(1e-9));
    for (const auto& it : trace.iterations)
        CHECK(!it.used_ce);
}

TEST_CASE("beta outside (0, 1/2] is rejected") {
    const Instance inst = gen_uniform(10, 1);
    for (double beta : {0.0, -0.1, 0.6}) {
        HybridConfig cfg;
        cfg.beta = beta;
        CHECK_THROWS_AS(run_hybrid_localsearch(inst, random_tour(10, 2), cfg),
                        std::invalid_argument);
    }
}
