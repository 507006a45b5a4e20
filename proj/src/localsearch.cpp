#include "twopt/localsearch.hpp"

#include <stdexcept>

namespace twopt {

namespace {

std::pair<Tour, ConvergenceTrace> converge(const Instance& inst, Tour tour, bool start_with_ce,
                                           const HybridConfig& cfg) {
    const int n = tour.n();
    const CminTable cmin_storage =
        (!start_with_ce && cfg.variant.strong_pivots) ? cmin_table(inst) : CminTable{};
    const CminTable* cmin = cmin_storage.values.empty() ? nullptr : &cmin_storage;

    const double budget =
        cfg.beta * static_cast<double>(n) * static_cast<double>(n - 1);

    ConvergenceTrace trace;
    trace.initial_length = tour_length(inst, tour);
    double running_length = trace.initial_length;

    bool use_ce = start_with_ce;
    for (;;) {
        const BestMoveResult res = use_ce ? best_move_ce(inst, tour)
                                          : best_move_greedy(inst, tour, cfg.variant, cmin);
        if (!res.move.has_value() || !(res.move->gain > 0.0))
            break;
        apply_move(tour, res.move->i, res.move->j);
        running_length -= res.move->gain;
        const int iter = trace.total_iterations() + 1;
        trace.iterations.push_back(
            {iter, use_ce, res.move->gain, res.stats.moves_evaluated, running_length});
        trace.total_evaluations += res.stats.moves_evaluated;
        if (!use_ce && cfg.switch_enabled &&
            static_cast<double>(res.stats.moves_evaluated) >= budget) {
            use_ce = true;
            trace.switch_iteration = iter;
        }
    }
    trace.final_length = tour_length(inst, tour);
    return {std::move(tour), std::move(trace)};
}

} // namespace

std::pair<Tour, ConvergenceTrace> run_ce_localsearch(const Instance& inst, Tour start) {
    HybridConfig cfg;
    cfg.switch_enabled = false;
    return converge(inst, std::move(start), /*start_with_ce=*/true, cfg);
}

std::pair<Tour, ConvergenceTrace> run_hybrid_localsearch(const Instance& inst, Tour start,
                                                         const HybridConfig& cfg) {
    if (!(cfg.beta > 0.0) || cfg.beta > 0.5)
        throw std::invalid_argument("beta must lie in (0, 1/2]");
    return converge(inst, std::move(start), /*start_with_ce=*/false, cfg);
}

bool is_local_optimum(const Instance& inst, const Tour& tour) {
    const BestMoveResult res = best_move_ce(inst, tour);
    return !res.move.has_value() || res.move->gain <= 0.0;
}

} // namespace twopt
