#pragma once

/// Probabilistic validators and complexity estimators: the closed-form tail
/// bound on the distance between two random points in the unit square, its
/// Monte-Carlo companion, expected-evaluation oracles for the fixed-threshold
/// search, witness predicates for good instances, and log-log power fitting.

#include <cstdint>
#include <utility>
#include <vector>

#include "twopt/instance.hpp"
#include "twopt/tour.hpp"

namespace twopt {

/// (7/16)(1 - sqrt(d^2 - 1))^4, valid for 1.055 < d <= sqrt(2).
double tail_bound(double d);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0; // binomial sqrt(p(1-p)/samples)
};

/// Fraction of random unit-square point pairs at distance > d.
/// samples >= 10^4; sampling is sharded with per-shard derived seeds.
McEstimate mc_tail_probability(double d, std::uint64_t samples, std::uint64_t seed);

/// Expected evaluations of the fixed-threshold search on a random tour:
/// (n-3) * n * P(edge cost > delta_n).
double expected_evals_uniform(int n, double alpha);
double expected_evals_euclidean(int n, double alpha, std::uint64_t samples, std::uint64_t seed);

/// True iff the best exhaustive gain exceeds 2*delta_n, which guarantees the
/// fixed-threshold search finds an optimal move.
bool instance_is_good(const Instance& inst, const Tour& tour, double delta_n);
bool instance_is_good(double ce_best_gain, double delta_n);

/// Uniform-setting witness: a pair of tour edges costing more than
/// (1+delta)/2 whose two replacement edges cost less than (1-delta)/2,
/// with delta = delta_uniform(n, alpha).
bool ls_move_exists(const Instance& inst, const Tour& tour, int n, double alpha);

struct Box {
    double xlo = 0.0, xhi = 0.0, ylo = 0.0, yhi = 0.0;
    bool contains(const Point& p) const {
        return p.x >= xlo && p.x <= xhi && p.y >= ylo && p.y <= yhi;
    }
};

/// Two cell pairs of side s = lambda * n^{-1/4} flanking the top-left and
/// bottom-right corners of the unit square. Any a1-a2 or b1-b2 edge is long
/// at least sqrt(2)(1 - 3s) while edges inside a1+b1 or a2+b2 are short at
/// most 2*sqrt(2)*s, so a traversed cross of the long edges yields a move
/// of gain above 2*(sqrt(2) - 5*sqrt(2)*s).
struct GridCells {
    double s = 0.0;
    Box a1, b1, a2, b2;
    static GridCells build(int n, double lambda); // requires 3*s <= 1/2
};

/// Euclidean-setting witness: the directed tour traverses some a1->a2 edge
/// and some b1->b2 edge.
bool d_uncross_exists(const Instance& inst, const Tour& tour, double lambda);

struct FitResult {
    double a = 0.0;        // multiplicative constant
    double b = 0.0;        // exponent
    double residual = 0.0; // mean squared log-error
};

/// Least squares on (log n, log y); needs >= 3 points, all positive.
FitResult power_fit(const std::vector<std::pair<double, double>>& points);
/// Best constant for a fixed exponent.
FitResult power_fit_fixed_exponent(const std::vector<std::pair<double, double>>& points, double b);

/// Reference no-witness curves, exposed for plotting and validator bounds.
double ls_move_absence_limit(double alpha);        // exp(-(alpha/4)^4)
double d_cross_absence_bound(int n, double lambda); // 2*(1 - lambda^4/n)^{n/2}

} // namespace twopt
