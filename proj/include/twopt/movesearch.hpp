#pragma once

/// Best 2-opt move search. Four strategies over the same move space:
///
///   best_move_ce              exhaustive scan of all n(n-1)/2 position pairs
///   best_move_greedy          pivot edges popped from a max-heap while the
///                             top key beats half the champion gain
///   best_move_blind           single pass testing each pivot against half
///                             the champion gain
///   best_move_fixed_threshold expands exactly the pivots costing more than
///                             a fixed threshold; may miss the best move
///
/// Greedy and blind are exact: any move beating the champion must have a
/// pivot edge costing more than half the champion's gain, so stopping when
/// no key passes that test cannot discard a better move. An expansion of a
/// pivot evaluates the n-3 moves pairing it with every tour edge at cyclic
/// distance >= 2.

#include <cstdint>
#include <optional>
#include <vector>

#include "twopt/instance.hpp"
#include "twopt/tour.hpp"

namespace twopt {

struct SearchStats {
    std::uint64_t moves_evaluated = 0;
    std::uint64_t edges_expanded = 0;
    std::uint64_t selections = 0;
};

/// Optional refinements. strong_pivots keys the pivots by
/// c(i,i+1) - (cmin(u) + cmin(v))/2, which is a valid (smaller) expansion
/// key because every edge costs at least the mean of its endpoint minima.
/// dedup keeps a shrinking array of never-expanded pivots so no move is
/// evaluated twice.
struct SearchVariant {
    bool strong_pivots = false;
    bool dedup = false;
};

const char* variant_name(const SearchVariant& v);

struct BestMoveResult {
    std::optional<Move> move;            // absent only when nothing was expanded
    SearchStats stats;
    std::vector<int> expanded_edges;     // pivot positions in expansion order
};

BestMoveResult best_move_ce(const Instance& inst, const Tour& tour);

/// Requires a CminTable when variant.strong_pivots is set.
BestMoveResult best_move_greedy(const Instance& inst, const Tour& tour,
                                const SearchVariant& variant = {},
                                const CminTable* cmin = nullptr);
BestMoveResult best_move_blind(const Instance& inst, const Tour& tour,
                               const SearchVariant& variant = {},
                               const CminTable* cmin = nullptr);

/// delta_n >= 0. Failure modes are encoded in the result: no expansion
/// leaves the move absent; a too-high threshold can also return a
/// suboptimal move.
BestMoveResult best_move_fixed_threshold(const Instance& inst, const Tour& tour, double delta_n);

/// Threshold families for random instances.
double delta_uniform(int n, double alpha);   // 1 - alpha * n^{-1/2}
double delta_euclidean(int n, double alpha); // sqrt(2) - alpha * n^{-1/4}
double alpha_from_lambda(double lambda);     // alpha = 5 * sqrt(2) * lambda

} // namespace twopt
