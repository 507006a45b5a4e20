#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "twopt/analysis.hpp"
#include "twopt/localsearch.hpp"
#include "twopt/movesearch.hpp"
#include "twopt/rng.hpp"

using namespace twopt;

TEST_CASE("tail bound closed form and validity range") {
    CHECK(tail_bound(std::sqrt(2.0)) == 0.0);
    // (7/16)(1 - sqrt(0.21))^4 evaluated independently
    const double expected = 7.0 / 16.0 * std::pow(1.0 - std::sqrt(1.1 * 1.1 - 1.0), 4.0);
    CHECK(tail_bound(1.1) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(tail_bound(1.1) == doctest::Approx(0.03768334659310083).epsilon(1e-12));

    CHECK_THROWS_AS(tail_bound(1.0), std::domain_error);
    CHECK_THROWS_AS(tail_bound(1.055), std::domain_error);
    CHECK_THROWS_AS(tail_bound(1.5), std::domain_error);

    double previous = tail_bound(1.056);
    for (double d = 1.08; d <= 1.414; d += 0.02) {
        const double value = tail_bound(d);
        CHECK(value < previous);
        previous = value;
    }
}

TEST_CASE("monte-carlo tail probability endpoints") {
    const McEstimate zero = mc_tail_probability(0.0, 20000, 1);
    CHECK(zero.estimate == 1.0);
    CHECK(zero.std_error == 0.0);

    const McEstimate diag = mc_tail_probability(std::sqrt(2.0), 20000, 2);
    CHECK(diag.estimate == 0.0);

    // beyond the diameter the tail is empty (needed by the euclidean oracle)
    CHECK(mc_tail_probability(2.0, 20000, 3).estimate == 0.0);

    CHECK_THROWS_AS(mc_tail_probability(0.5, 9999, 1), std::invalid_argument);
    CHECK_THROWS_AS(mc_tail_probability(-0.1, 20000, 1), std::invalid_argument);
}

TEST_CASE("monte-carlo estimates are deterministic and respect the bound") {
    const McEstimate a = mc_tail_probability(1.2, 200000, 7);
    const McEstimate b = mc_tail_probability(1.2, 200000, 7);
    CHECK(a.estimate == b.estimate);
    CHECK(a.estimate <= tail_bound(1.2) + 3.0 * a.std_error);
}

TEST_CASE("uniform expected-evaluations oracle") {
    CHECK(expected_evals_uniform(4, 1.7) == doctest::Approx(2.0 * 1.7).epsilon(1e-12));
    const double f2000 = expected_evals_uniform(2000, 1.89);
    CHECK(f2000 == doctest::Approx(168793.16899033563).epsilon(1e-12));
    CHECK(std::abs(f2000 - 169447.0) / 169447.0 < 0.02); // close to the table value
    CHECK_THROWS_AS(expected_evals_uniform(3, 1.0), std::invalid_argument);
}

TEST_CASE("euclidean expected-evaluations oracle tracks the table value") {
    const double f2000 = expected_evals_euclidean(2000, 2.5, 1'000'000, 11);
    CHECK(std::abs(f2000 - 63100.0) / 63100.0 < 0.06);
}

TEST_CASE("good instances are exactly those beating twice the threshold") {
    const Instance inst = gen_uniform(40, 3);
    const Tour tour = random_tour(40, 4);
    const double gain = best_move_ce(inst, tour).move->gain;
    REQUIRE(gain > 0.0);
    CHECK(instance_is_good(inst, tour, 0.0));
    CHECK(instance_is_good(inst, tour, gain / 2.0 * 0.99));
    CHECK(!instance_is_good(inst, tour, gain / 2.0)); // strict threshold
    CHECK(!instance_is_good(inst, tour, gain));

    const double delta = gain / 2.0 * 0.9;
    const BestMoveResult alg = best_move_fixed_threshold(inst, tour, delta);
    CHECK(alg.move->gain == gain);
}

TEST_CASE("ls-move witness on hand-built matrices") {
    // tour edges (0,1) and (2,3) are long, both replacements are short
    std::vector<double> full = {
        0.0, 1.0, 0.0, 0.5, //
        1.0, 0.0, 0.5, 0.0, //
        0.0, 0.5, 0.0, 1.0, //
        0.5, 0.0, 1.0, 0.0,
    };
    const Instance witness = Instance::from_full_matrix(4, full);
    CHECK(ls_move_exists(witness, Tour::identity(4), 4, 1.0));

    std::vector<double> flat(16, 0.5);
    for (int i = 0; i < 4; ++i)
        flat[static_cast<std::size_t>(i * 4 + i)] = 0.0;
    const Instance no_long = Instance::from_full_matrix(4, flat);
    CHECK(!ls_move_exists(no_long, Tour::identity(4), 4, 1.0));
}

TEST_CASE("ls-move witnesses are good moves and appear at the predicted rate") {
    const int n = 500;
    const double p = 0.9;
    const double alpha = 4.0 * std::pow(std::log(1.0 / (1.0 - p)), 0.25);
    CHECK(ls_move_absence_limit(alpha) == doctest::Approx(1.0 - p).epsilon(1e-9));

    const double delta = delta_uniform(n, alpha);
    const int trials = 200;
    int witnesses = 0;
    int good_gains = 0;
    for (int t = 0; t < trials; ++t) {
        const Instance inst = gen_uniform(n, derive_seed(808, t));
        const Tour tour = random_tour(n, derive_seed(808, t, 1));
        if (!ls_move_exists(inst, tour, n, alpha))
            continue;
        ++witnesses;
        good_gains += best_move_ce(inst, tour).move->gain > 2.0 * delta;
    }
    CHECK(witnesses == good_gains); // every witness certifies a good instance
    const double no_rate = static_cast<double>(trials - witnesses) / trials;
    const double sigma = std::sqrt(std::max(no_rate * (1.0 - no_rate), 1.0 / trials) / trials);
    CHECK(no_rate <= (1.0 - p) + 3.0 * sigma);
}

TEST_CASE("grid cells satisfy the distance bounds at their corners") {
    const int n = 4096;
    const double lambda = 1.3;
    const GridCells g = GridCells::build(n, lambda);
    const double s = g.s;
    CHECK(s == doctest::Approx(lambda / std::pow(n, 0.25)).epsilon(1e-12));

    const auto corners = [](const Box& b) {
        return std::vector<Point>{{b.xlo, b.ylo}, {b.xlo, b.yhi}, {b.xhi, b.ylo}, {b.xhi, b.yhi}};
    };
    const auto dist = [](const Point& a, const Point& b) {
        return std::hypot(a.x - b.x, a.y - b.y);
    };

    // long-edge floor: min corner distance across each diagonal cell pair
    for (const auto& [from, to] : {std::pair{g.a1, g.a2}, std::pair{g.b1, g.b2}}) {
        double min_d = 10.0;
        for (const Point& u : corners(from))
            for (const Point& v : corners(to))
                min_d = std::min(min_d, dist(u, v));
        CHECK(min_d >= std::sqrt(2.0) - 3.0 * std::sqrt(2.0) * s - 1e-12);
    }
    // short-edge ceiling: max corner distance inside each corner cluster
    for (const auto& [ca, cb] : {std::pair{g.a1, g.b1}, std::pair{g.a2, g.b2}}) {
        double max_d = 0.0;
        std::vector<Point> cluster = corners(ca);
        for (const Point& p : corners(cb))
            cluster.push_back(p);
        for (const Point& u : cluster)
            for (const Point& v : cluster)
                max_d = std::max(max_d, dist(u, v));
        CHECK(max_d <= 2.0 * std::sqrt(2.0) * s + 1e-12);
    }

    CHECK_THROWS_AS(GridCells::build(1000, 2.0), std::domain_error);
}

TEST_CASE("d-uncross witness detection") {
    const double lambda = 0.2;
    const GridCells g = GridCells::build(4, lambda);
    const auto center = [](const Box& b) {
        return Point{(b.xlo + b.xhi) / 2.0, (b.ylo + b.yhi) / 2.0};
    };
    const Instance ordered = Instance::from_points(
        InstanceKind::Euclidean, {center(g.a1), center(g.a2), center(g.b1), center(g.b2)});
    CHECK(d_uncross_exists(ordered, Tour::identity(4), lambda));

    // same cells but the B pair traversed the wrong way: no witness
    const Instance reversed = Instance::from_points(
        InstanceKind::Euclidean, {center(g.a1), center(g.a2), center(g.b2), center(g.b1)});
    CHECK(!d_uncross_exists(reversed, Tour::identity(4), lambda));

    const Instance clumped = Instance::from_points(
        InstanceKind::Euclidean, {{0.5, 0.5}, {0.51, 0.5}, {0.5, 0.51}, {0.51, 0.51}});
    CHECK(!d_uncross_exists(clumped, Tour::identity(4), lambda));

    const Instance uniform_kind = gen_uniform(10, 1);
    CHECK_THROWS_AS(d_uncross_exists(uniform_kind, random_tour(10, 1), lambda),
                    std::invalid_argument);
}

TEST_CASE("d-uncross witnesses certify the equation-(1) gain") {
    const int n = 1000;
    const double lambda = 0.9;
    const double two_delta =
        2.0 * (std::sqrt(2.0) - 5.0 * std::sqrt(2.0) * lambda / std::pow(n, 0.25));
    int witnesses = 0;
    for (int t = 0; t < 30 && witnesses < 5; ++t) {
        const Instance inst = gen_euclidean(n, derive_seed(99, t));
        const Tour tour = random_tour(n, derive_seed(99, t, 1));
        if (!d_uncross_exists(inst, tour, lambda))
            continue;
        ++witnesses;
        CHECK(best_move_ce(inst, tour).move->gain > two_delta);
    }
    CHECK(witnesses >= 1);
}

TEST_CASE("power fit recovers exact power laws") {
    const std::vector<std::pair<double, double>> exact = {
        {1000.0, 2.0 * std::pow(1000.0, 1.5)},
        {2000.0, 2.0 * std::pow(2000.0, 1.5)},
        {4000.0, 2.0 * std::pow(4000.0, 1.5)},
        {8000.0, 2.0 * std::pow(8000.0, 1.5)},
    };
    const FitResult fit = power_fit(exact);
    CHECK(fit.a == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.b == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(fit.residual <= 1e-18);

    const FitResult fixed = power_fit_fixed_exponent(exact, 1.5);
    CHECK(fixed.a == doctest::Approx(2.0).epsilon(1e-9));

    CHECK_THROWS_AS(power_fit({{1.0, 1.0}, {2.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(power_fit({{1.0, 1.0}, {2.0, -2.0}, {3.0, 3.0}}), std::invalid_argument);
}

TEST_CASE("published averages fit the expected exponents") {
    // greedy columns of the uniform and euclidean move-count tables
    const std::vector<std::pair<double, double>> uniform_greedy = {
        {2000, 106462},   {4000, 304987},   {6000, 560647},   {8000, 871001},
        {10000, 1201409}, {12000, 1567947}, {14000, 1986524}, {16000, 2453347},
        {18000, 2910420}, {20000, 3368334}, {22000, 3963375}, {24000, 4486287},
    };
    const double b_uniform = power_fit(uniform_greedy).b;
    CHECK(b_uniform >= 1.40);
    CHECK(b_uniform <= 1.60);

    const std::vector<std::pair<double, double>> euclidean_greedy = {
        {2000, 15786},   {4000, 32811},   {6000, 46710},   {8000, 61073},
        {10000, 78926},  {12000, 93552},  {14000, 110450}, {16000, 124632},
        {18000, 141852}, {20000, 156056}, {22000, 169574}, {24000, 181513},
    };
    const double b_euclid = power_fit(euclidean_greedy).b;
    CHECK(b_euclid >= 0.90);
    CHECK(b_euclid <= 1.15);
}

TEST_CASE("reference absence curves") {
    CHECK(ls_move_absence_limit(4.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(d_cross_absence_bound(4096, 1.3) ==
          doctest::Approx(2.0 * std::pow(1.0 - std::pow(1.3, 4.0) / 4096.0, 2048.0))
              .epsilon(1e-12));
}
