#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "twopt/rng.hpp"
#include "twopt/tour.hpp"

using namespace twopt;

namespace {

/// Unit-square corners visited in crossing order: two diagonals, two sides.
Instance crossing_corners() {
    return Instance::from_points(InstanceKind::Euclidean,
                                 {{0.0, 0.0}, {1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}});
}

double length_by_loop(const Instance& inst, const Tour& tour) {
    double total = 0.0;
    for (int i = 0; i < tour.n(); ++i)
        total += inst.cost(tour.node_at(i), tour.node_at((i + 1) % tour.n()));
    return total;
}

double orient(const Point& a, const Point& b, const Point& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool properly_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
    return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

} // namespace

TEST_CASE("random_tour yields valid deterministic permutations") {
    const Tour t = random_tour(4, 0);
    std::vector<int> sorted = t.order();
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3});

    const Tour a = random_tour(50, 9);
    const Tour b = random_tour(50, 9);
    CHECK(a.order() == b.order());
    CHECK_THROWS_AS(random_tour(3, 1), std::invalid_argument);
}

TEST_CASE("random tours are uniform over permutations") {
    // 6000 tours over the 720 permutations of 6 nodes; chi-square with
    // df = 719 must stay below the 0.999 quantile (Wilson-Hilferty).
    std::map<std::vector<int>, int> counts;
    const int trials = 6000;
    for (int seed = 1; seed <= trials; ++seed)
        counts[random_tour(6, static_cast<std::uint64_t>(seed)).order()] += 1;
    CHECK(counts.size() == 720);

    const double expected = trials / 720.0;
    double chi2 = 0.0;
    for (const auto& [perm, observed] : counts) {
        const double diff = observed - expected;
        chi2 += diff * diff / expected;
    }
    const double df = 719.0;
    const double z = 3.0902; // standard normal 0.999 quantile
    const double h = 2.0 / (9.0 * df);
    const double cutoff = df * std::pow(1.0 - h + z * std::sqrt(h), 3.0);
    CHECK(chi2 < cutoff);
}

TEST_CASE("tour_length sums the cyclic edges") {
    const Instance inst = crossing_corners();
    const Tour boundary(std::vector<int>{0, 2, 1, 3}); // around the square
    CHECK(tour_length(inst, boundary) == doctest::Approx(4.0).epsilon(1e-12));

    const Tour crossed = Tour::identity(4); // both diagonals used
    CHECK(tour_length(inst, crossed) ==
          doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));

    const Instance rnd = gen_uniform(40, 77);
    const Tour t = random_tour(40, 3);
    CHECK(tour_length(rnd, t) == doctest::Approx(length_by_loop(rnd, t)).epsilon(1e-12));
}

TEST_CASE("move_gain matches the uncrossing value") {
    const Instance inst = crossing_corners();
    const Tour crossed = Tour::identity(4);
    CHECK(move_gain(inst, crossed, 0, 2) ==
          doctest::Approx(2.0 * std::sqrt(2.0) - 2.0).epsilon(1e-9));
}

TEST_CASE("degenerate pairs have zero gain and cannot be applied") {
    const Instance inst = gen_uniform(10, 5);
    Tour t = random_tour(10, 6);
    for (int i = 0; i + 1 < 10; ++i)
        CHECK(move_gain(inst, t, i, i + 1) == 0.0);
    CHECK(move_gain(inst, t, 0, 9) == 0.0);
    CHECK_THROWS_AS(apply_move(t, 3, 4), std::invalid_argument);
    CHECK_THROWS_AS(apply_move(t, 0, 9), std::invalid_argument);
    CHECK_THROWS_AS(move_gain(inst, t, 4, 3), std::out_of_range);
    CHECK_THROWS_AS(move_gain(inst, t, 0, 10), std::out_of_range);
}

TEST_CASE("gain equals the length difference of applying the move") {
    const Instance inst = gen_uniform(8, 123);
    for (int i = 0; i < 8; ++i) {
        for (int j = i + 1; j < 8; ++j) {
            if (is_degenerate_pair(8, i, j))
                continue;
            Tour t = random_tour(8, 55);
            const double before = tour_length(inst, t);
            const double gain = move_gain(inst, t, i, j);
            apply_move(t, i, j);
            CHECK(tour_length(inst, t) ==
                  doctest::Approx(before - gain).epsilon(1e-12));
        }
    }
}

TEST_CASE("apply_move reverses the inner segment") {
    // positions are 0-based: removing edges at positions 1 and 4 of
    // (1,2,3,4,5,6) reverses 3,4,5 into (1,2,5,4,3,6)
    Tour t(std::vector<int>{0, 1, 2, 3, 4, 5});
    apply_move(t, 1, 4);
    CHECK(t.order() == std::vector<int>{0, 1, 4, 3, 2, 5});
    for (int node = 0; node < 6; ++node)
        CHECK(t.node_at(t.position_of(node)) == node);

    apply_move(t, 1, 4); // involution
    CHECK(t.order() == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("length conservation over random move triples") {
    Rng rng(2025);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 6 + static_cast<int>(rng.below(24));
        const bool euclid = rng.below(2) == 0;
        const Instance inst = euclid ? gen_euclidean(n, rng.next()) : gen_uniform(n, rng.next());
        Tour t = random_tour(n, rng.next());
        int i = 0, j = 0;
        do {
            i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
            j = i + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i - 1)));
        } while (is_degenerate_pair(n, i, j));
        const double before = tour_length(inst, t);
        const double gain = move_gain(inst, t, i, j);
        apply_move(t, i, j);
        const double after = tour_length(inst, t);
        CHECK(std::abs(after - (before - gain)) <= 1e-9 * std::max(1.0, before));

        std::vector<int> sorted = t.order();
        std::sort(sorted.begin(), sorted.end());
        for (int k = 0; k < n; ++k)
            CHECK(sorted[k] == k);
    }
}

TEST_CASE("gain is symmetric in the pivot roles") {
    const Instance inst = gen_euclidean(30, 8);
    const Tour t = random_tour(30, 9);
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng(trial);
        const int i = static_cast<int>(rng.below(28));
        const int j = i + 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(30 - i - 2)));
        if (is_degenerate_pair(30, i, j))
            continue;
        // expanding j with partner i evaluates the same four edges
        const double from_j = inst.cost(t.node_at(j), t.succ_at(j)) +
                              inst.cost(t.node_at(i), t.succ_at(i)) -
                              inst.cost(t.node_at(j), t.node_at(i)) -
                              inst.cost(t.succ_at(j), t.succ_at(i));
        CHECK(move_gain(inst, t, i, j) == from_j);
    }
}

TEST_CASE("properly crossing tour edges give positive gain") {
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 200; ++seed) {
        const Instance inst = gen_euclidean(10, seed);
        const Tour t = random_tour(10, seed + 1);
        const auto& pts = inst.points();
        for (int i = 0; i < 10; ++i) {
            for (int j = i + 1; j < 10; ++j) {
                if (is_degenerate_pair(10, i, j))
                    continue;
                const Point& a = pts[t.node_at(i)];
                const Point& b = pts[t.succ_at(i)];
                const Point& c = pts[t.node_at(j)];
                const Point& d = pts[t.succ_at(j)];
                if (properly_cross(a, b, c, d)) {
                    CHECK(move_gain(inst, t, i, j) > 0.0);
                    ++checked;
                }
            }
        }
    }
    CHECK(checked >= 200);
}

TEST_CASE("tour files round-trip") {
    const Tour t = random_tour(12, 31);
    std::stringstream buffer;
    write_tour(t, buffer);
    const Tour back = read_tour(buffer);
    CHECK(back.order() == t.order());
}
