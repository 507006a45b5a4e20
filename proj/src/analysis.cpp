#include "twopt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twopt/movesearch.hpp"
#include "twopt/rng.hpp"

namespace twopt {

double tail_bound(double d) {
    if (!(d > 1.055) || !(d <= std::sqrt(2.0)))
        throw std::domain_error("tail_bound is valid for 1.055 < d <= sqrt(2)");
    const double t = std::max(0.0, 1.0 - std::sqrt(d * d - 1.0)); // exactly 0 at the diameter
    const double t2 = t * t;
    return (7.0 / 16.0) * t2 * t2;
}

McEstimate mc_tail_probability(double d, std::uint64_t samples, std::uint64_t seed) {
    if (!(d >= 0.0))
        throw std::invalid_argument("d must be non-negative");
    if (samples < 10000)
        throw std::invalid_argument("need at least 10^4 samples");
    constexpr std::uint64_t kShard = 1u << 20;
    const double d2 = d * d;
    std::uint64_t hits = 0;
    std::uint64_t done = 0;
    for (std::uint64_t shard = 0; done < samples; ++shard) {
        const std::uint64_t count = std::min<std::uint64_t>(kShard, samples - done);
        Rng rng(derive_seed(seed, shard));
        std::uint64_t local = 0;
        for (std::uint64_t k = 0; k < count; ++k) {
            const double dx = rng.uniform01() - rng.uniform01();
            const double dy = rng.uniform01() - rng.uniform01();
            if (dx * dx + dy * dy > d2)
                ++local;
        }
        hits += local;
        done += count;
    }
    McEstimate est;
    est.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    est.std_error =
        std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(samples));
    return est;
}

double expected_evals_uniform(int n, double alpha) {
    if (n < 4 || !(alpha > 0.0))
        throw std::invalid_argument("expected_evals_uniform needs n >= 4 and alpha > 0");
    return static_cast<double>(n - 3) * static_cast<double>(n) * alpha /
           std::sqrt(static_cast<double>(n));
}

double expected_evals_euclidean(int n, double alpha, std::uint64_t samples, std::uint64_t seed) {
    if (n < 4 || !(alpha > 0.0))
        throw std::invalid_argument("expected_evals_euclidean needs n >= 4 and alpha > 0");
    const double delta = delta_euclidean(n, alpha);
    const double p = mc_tail_probability(delta, samples, seed).estimate;
    return static_cast<double>(n - 3) * static_cast<double>(n) * p;
}

bool instance_is_good(double ce_best_gain, double delta_n) { return ce_best_gain > 2.0 * delta_n; }

bool instance_is_good(const Instance& inst, const Tour& tour, double delta_n) {
    const BestMoveResult res = best_move_ce(inst, tour);
    return res.move.has_value() && instance_is_good(res.move->gain, delta_n);
}

bool ls_move_exists(const Instance& inst, const Tour& tour, int n, double alpha) {
    const double delta = delta_uniform(n, alpha);
    const double long_threshold = (1.0 + delta) * 0.5;
    const double short_threshold = (1.0 - delta) * 0.5;
    const int tn = tour.n();

    std::vector<int> long_edges;
    for (int i = 0; i < tn; ++i)
        if (inst.cost(tour.node_at(i), tour.succ_at(i)) > long_threshold)
            long_edges.push_back(i);

    for (std::size_t a = 0; a < long_edges.size(); ++a) {
        for (std::size_t b = a + 1; b < long_edges.size(); ++b) {
            const int i = long_edges[a];
            const int j = long_edges[b];
            if (is_degenerate_pair(tn, i, j))
                continue;
            if (inst.cost(tour.node_at(i), tour.node_at(j)) < short_threshold &&
                inst.cost(tour.succ_at(i), tour.succ_at(j)) < short_threshold)
                return true;
        }
    }
    return false;
}

GridCells GridCells::build(int n, double lambda) {
    if (n < 4 || !(lambda > 0.0))
        throw std::invalid_argument("grid cells need n >= 4 and lambda > 0");
    const double s = lambda / std::pow(static_cast<double>(n), 0.25);
    if (!(3.0 * s <= 0.5))
        throw std::domain_error("lambda too large for this n: cells do not fit");
    GridCells g;
    g.s = s;
    g.a1 = Box{s, 2.0 * s, 1.0 - s, 1.0};
    g.b1 = Box{0.0, s, 1.0 - 2.0 * s, 1.0 - s};
    g.a2 = Box{1.0 - 2.0 * s, 1.0 - s, 0.0, s};
    g.b2 = Box{1.0 - s, 1.0, s, 2.0 * s};
    return g;
}

bool d_uncross_exists(const Instance& inst, const Tour& tour, double lambda) {
    if (inst.kind() != InstanceKind::Euclidean)
        throw std::invalid_argument("d_uncross_exists needs a unit-square Euclidean instance");
    const GridCells g = GridCells::build(inst.n(), lambda);
    const auto& pts = inst.points();
    bool has_a = false, has_b = false;
    const int n = tour.n();
    for (int i = 0; i < n && !(has_a && has_b); ++i) {
        const Point& from = pts[static_cast<std::size_t>(tour.node_at(i))];
        const Point& to = pts[static_cast<std::size_t>(tour.succ_at(i))];
        if (!has_a && g.a1.contains(from) && g.a2.contains(to))
            has_a = true;
        if (!has_b && g.b1.contains(from) && g.b2.contains(to))
            has_b = true;
    }
    return has_a && has_b;
}

namespace {

void check_fit_input(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("power fit needs at least 3 points");
    for (const auto& [x, y] : points)
        if (!(x > 0.0) || !(y > 0.0))
            throw std::invalid_argument("power fit needs positive coordinates");
}

double fit_residual(const std::vector<std::pair<double, double>>& points, double log_a, double b) {
    double sum = 0.0;
    for (const auto& [x, y] : points) {
        const double err = std::log(y) - (log_a + b * std::log(x));
        sum += err * err;
    }
    return sum / static_cast<double>(points.size());
}

} // namespace

FitResult power_fit(const std::vector<std::pair<double, double>>& points) {
    check_fit_input(points);
    const double m = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0)
        throw std::invalid_argument("power fit needs at least two distinct sizes");
    const double b = (m * sxy - sx * sy) / denom;
    const double log_a = (sy - b * sx) / m;
    return FitResult{std::exp(log_a), b, fit_residual(points, log_a, b)};
}

FitResult power_fit_fixed_exponent(const std::vector<std::pair<double, double>>& points,
                                   double b) {
    check_fit_input(points);
    double sum = 0.0;
    for (const auto& [x, y] : points)
        sum += std::log(y) - b * std::log(x);
    const double log_a = sum / static_cast<double>(points.size());
    return FitResult{std::exp(log_a), b, fit_residual(points, log_a, b)};
}

double ls_move_absence_limit(double alpha) {
    const double q = alpha / 4.0;
    const double q2 = q * q;
    return std::exp(-(q2 * q2));
}

double d_cross_absence_bound(int n, double lambda) {
    const double l2 = lambda * lambda;
    return 2.0 * std::pow(1.0 - l2 * l2 / static_cast<double>(n), static_cast<double>(n) / 2.0);
}

} // namespace twopt
