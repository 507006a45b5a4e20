#include "twopt/movesearch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace twopt {

namespace {

/// Best move seen so far. The undefined initial champion behaves like gain
/// -infinity without putting an infinity into arithmetic. Strictly-better
/// updates keep the first move found on ties.
struct Champion {
    bool found = false;
    Move best{};

    void consider(int i, int j, double gain) {
        if (!found || gain > best.gain) {
            found = true;
            best = Move{i, j, gain};
        }
    }
    bool beats_threshold(double key) const { return !found || key > best.gain * 0.5; }
};

/// Per-call scratch: tour layout flattened for the hot loops.
struct Scan {
    const Instance& inst;
    int n;
    std::vector<int> node;       // node at each position
    std::vector<int> succ;       // node at the following position
    std::vector<double> edge_cost;

    explicit Scan(const Instance& instance, const Tour& tour)
        : inst(instance), n(tour.n()), node(tour.order()) {
        succ.resize(static_cast<std::size_t>(n));
        edge_cost.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            succ[static_cast<std::size_t>(i)] = node[static_cast<std::size_t>((i + 1) % n)];
            edge_cost[static_cast<std::size_t>(i)] =
                inst.cost(node[static_cast<std::size_t>(i)], succ[static_cast<std::size_t>(i)]);
        }
    }

    double gain(double cp, int u0, int u1, int j) const {
        const int v0 = node[static_cast<std::size_t>(j)];
        const int v1 = succ[static_cast<std::size_t>(j)];
        return cp + edge_cost[static_cast<std::size_t>(j)] - inst.cost(u0, v0) -
               inst.cost(u1, v1);
    }

    /// Evaluates the n-3 moves completing pivot p (partners at cyclic
    /// distance >= 2).
    void expand(int p, Champion& champ, SearchStats& stats) const {
        const int u0 = node[static_cast<std::size_t>(p)];
        const int u1 = succ[static_cast<std::size_t>(p)];
        const double cp = edge_cost[static_cast<std::size_t>(p)];
        auto run = [&](int lo, int hi) {
            for (int j = lo; j <= hi; ++j)
                champ.consider(std::min(p, j), std::max(p, j), gain(cp, u0, u1, j));
        };
        if (p == 0) {
            run(2, n - 2);
        } else if (p == n - 1) {
            run(1, n - 3);
        } else {
            run(0, p - 2);
            run(p + 2, n - 1);
        }
        stats.moves_evaluated += static_cast<std::uint64_t>(n - 3);
        stats.edges_expanded += 1;
    }

    /// Same as expand() but partners come from the never-expanded array:
    /// the pivot's own slot is swap-removed, cyclically adjacent partners
    /// are skipped (their moves are degenerate), everything else is
    /// evaluated exactly once over the whole search.
    void expand_dedup(int p, Champion& champ, SearchStats& stats,
                      std::vector<int>& never_expanded) const {
        const int u0 = node[static_cast<std::size_t>(p)];
        const int u1 = succ[static_cast<std::size_t>(p)];
        const double cp = edge_cost[static_cast<std::size_t>(p)];
        std::uint64_t evaluated = 0;
        std::size_t k = 0;
        while (k < never_expanded.size()) {
            const int j = never_expanded[k];
            if (j == p) {
                never_expanded[k] = never_expanded.back();
                never_expanded.pop_back();
                continue; // re-examine the same slot
            }
            const int d = std::abs(p - j);
            if (d != 1 && d != n - 1) {
                champ.consider(std::min(p, j), std::max(p, j), gain(cp, u0, u1, j));
                ++evaluated;
            }
            ++k;
        }
        stats.moves_evaluated += evaluated;
        stats.edges_expanded += 1;
    }
};

std::vector<double> pivot_keys(const Scan& scan, const SearchVariant& variant,
                               const CminTable* cmin) {
    if (!variant.strong_pivots)
        return scan.edge_cost;
    if (cmin == nullptr || cmin->values.size() != static_cast<std::size_t>(scan.n))
        throw std::invalid_argument("strong_pivots requires a CminTable for this instance");
    std::vector<double> keys(static_cast<std::size_t>(scan.n));
    for (int i = 0; i < scan.n; ++i) {
        const double half_min = (cmin->values[static_cast<std::size_t>(scan.node[static_cast<std::size_t>(i)])] +
                                 cmin->values[static_cast<std::size_t>(scan.succ[static_cast<std::size_t>(i)])]) *
                                0.5;
        keys[static_cast<std::size_t>(i)] = scan.edge_cost[static_cast<std::size_t>(i)] - half_min;
    }
    return keys;
}

std::vector<int> fresh_never_expanded(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

} // namespace

const char* variant_name(const SearchVariant& v) {
    if (v.strong_pivots && v.dedup)
        return "strong+dedup";
    if (v.strong_pivots)
        return "strong";
    if (v.dedup)
        return "dedup";
    return "basic";
}

BestMoveResult best_move_ce(const Instance& inst, const Tour& tour) {
    const Scan scan(inst, tour);
    const int n = scan.n;
    Champion champ;
    for (int i = 0; i + 1 < n; ++i) {
        champ.consider(i, i + 1, 0.0); // degenerate pair, shared node
        const int u0 = scan.node[static_cast<std::size_t>(i)];
        const int u1 = scan.succ[static_cast<std::size_t>(i)];
        const double ci = scan.edge_cost[static_cast<std::size_t>(i)];
        const int jmax = (i == 0) ? n - 2 : n - 1;
        for (int j = i + 2; j <= jmax; ++j)
            champ.consider(i, j, scan.gain(ci, u0, u1, j));
        if (i == 0)
            champ.consider(0, n - 1, 0.0); // degenerate wraparound pair
    }
    BestMoveResult res;
    res.move = champ.best;
    res.stats.moves_evaluated =
        static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
    return res;
}

BestMoveResult best_move_greedy(const Instance& inst, const Tour& tour,
                                const SearchVariant& variant, const CminTable* cmin) {
    const Scan scan(inst, tour);
    const int n = scan.n;
    const std::vector<double> keys = pivot_keys(scan, variant, cmin);

    struct Entry {
        double key;
        int pos;
    };
    std::vector<Entry> heap(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        heap[static_cast<std::size_t>(i)] = Entry{keys[static_cast<std::size_t>(i)], i};
    // max-heap on key; equal keys surface the smaller tour position first
    const auto less = [](const Entry& a, const Entry& b) {
        return a.key < b.key || (a.key == b.key && a.pos > b.pos);
    };
    std::make_heap(heap.begin(), heap.end(), less);

    BestMoveResult res;
    Champion champ;
    std::vector<int> never_expanded;
    if (variant.dedup)
        never_expanded = fresh_never_expanded(n);

    while (!heap.empty()) {
        const Entry top = heap.front();
        if (!champ.beats_threshold(top.key))
            break;
        std::pop_heap(heap.begin(), heap.end(), less);
        heap.pop_back();
        res.stats.selections += 1;
        res.expanded_edges.push_back(top.pos);
        if (variant.dedup)
            scan.expand_dedup(top.pos, champ, res.stats, never_expanded);
        else
            scan.expand(top.pos, champ, res.stats);
    }
    if (champ.found)
        res.move = champ.best;
    return res;
}

BestMoveResult best_move_blind(const Instance& inst, const Tour& tour,
                               const SearchVariant& variant, const CminTable* cmin) {
    const Scan scan(inst, tour);
    const int n = scan.n;
    const std::vector<double> keys = pivot_keys(scan, variant, cmin);

    BestMoveResult res;
    Champion champ;
    std::vector<int> never_expanded;
    if (variant.dedup)
        never_expanded = fresh_never_expanded(n);

    for (int i = 0; i < n; ++i) {
        res.stats.selections += 1;
        if (!champ.beats_threshold(keys[static_cast<std::size_t>(i)]))
            continue;
        res.expanded_edges.push_back(i);
        if (variant.dedup)
            scan.expand_dedup(i, champ, res.stats, never_expanded);
        else
            scan.expand(i, champ, res.stats);
    }
    if (champ.found)
        res.move = champ.best;
    return res;
}

BestMoveResult best_move_fixed_threshold(const Instance& inst, const Tour& tour, double delta_n) {
    if (!(delta_n >= 0.0))
        throw std::invalid_argument("delta_n must be non-negative");
    const Scan scan(inst, tour);
    const int n = scan.n;

    BestMoveResult res;
    Champion champ;
    for (int i = 0; i < n; ++i) {
        res.stats.selections += 1;
        if (scan.edge_cost[static_cast<std::size_t>(i)] > delta_n) {
            res.expanded_edges.push_back(i);
            scan.expand(i, champ, res.stats);
        }
    }
    if (champ.found)
        res.move = champ.best;
    return res;
}

double delta_uniform(int n, double alpha) {
    if (n < 4 || !(alpha > 0.0))
        throw std::invalid_argument("delta_uniform needs n >= 4 and alpha > 0");
    return 1.0 - alpha / std::sqrt(static_cast<double>(n));
}

double delta_euclidean(int n, double alpha) {
    if (n < 4 || !(alpha > 0.0))
        throw std::invalid_argument("delta_euclidean needs n >= 4 and alpha > 0");
    return std::sqrt(2.0) - alpha / std::pow(static_cast<double>(n), 0.25);
}

double alpha_from_lambda(double lambda) { return 5.0 * std::sqrt(2.0) * lambda; }

} // namespace twopt
