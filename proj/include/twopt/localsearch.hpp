#pragma once

/// Best-improvement 2-opt local search: pure exhaustive convergence and the
/// hybrid driver that starts with the greedy heap search and falls back to
/// exhaustive enumeration permanently once an iteration evaluates too many
/// moves. Both pick a maximum-gain move each iteration, so they walk
/// identical length trajectories from the same start tour.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "twopt/instance.hpp"
#include "twopt/movesearch.hpp"
#include "twopt/tour.hpp"

namespace twopt {

struct IterationRecord {
    int iteration = 0; // 1-based
    bool used_ce = false;
    double gain = 0.0;
    std::uint64_t moves_evaluated = 0;
    double length = 0.0; // running length after applying the move
};

/// One record per applied move; the terminating search call (best gain <= 0)
/// is not an iteration and is excluded from total_evaluations, so a pure
/// exhaustive run averages exactly n(n-1)/2 evaluations per iteration.
struct ConvergenceTrace {
    std::vector<IterationRecord> iterations;
    std::optional<int> switch_iteration; // absent if the run never switched
    std::uint64_t total_evaluations = 0;
    double initial_length = 0.0;
    double final_length = 0.0; // recomputed from the final tour

    int total_iterations() const { return static_cast<int>(iterations.size()); }
};

struct HybridConfig {
    double beta = 0.4; // switch once an iteration evaluates >= beta*n*(n-1) moves
    SearchVariant variant{};
    bool switch_enabled = true;
};

std::pair<Tour, ConvergenceTrace> run_ce_localsearch(const Instance& inst, Tour start);
std::pair<Tour, ConvergenceTrace> run_hybrid_localsearch(const Instance& inst, Tour start,
                                                         const HybridConfig& cfg);

/// True iff no 2-opt move has positive gain.
bool is_local_optimum(const Instance& inst, const Tour& tour);

} // namespace twopt
