#pragma once

/// Experiment orchestration behind the CLI: deterministic trial plans over
/// (size, instance, tour) grids, the table-style summaries they produce, and
/// their CSV serializations. Re-running a plan reproduces byte-identical
/// output (modulo the suppressible timestamp header).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twopt/analysis.hpp"
#include "twopt/instance.hpp"
#include "twopt/localsearch.hpp"
#include "twopt/movesearch.hpp"

namespace twopt::bench {

enum class Distribution { Uniform, Euclidean, Tsplib };

const char* distribution_name(Distribution d);
Distribution distribution_from_name(const std::string& name);

struct ExperimentPlan {
    Distribution dist = Distribution::Uniform;
    std::string tsplib_path;
    std::vector<int> sizes;
    int instances_per_size = 100;
    int tours_per_instance = 10;
    std::vector<std::string> algorithms = {"ce", "greedy", "blind", "fixed"};
    SearchVariant variant{};
    double alpha = 0.0; // 0 selects the distribution default (1.89 / 2.5)
    std::vector<double> betas = {0.4};
    bool switch_enabled = true;
    std::uint64_t master_seed = 1;
    int threads = 0; // 0 = hardware concurrency
    bool header_timestamp = true;
    bool record_timing = false; // adds a wall_ms column; breaks byte-identity of reruns

    double resolved_alpha() const;
    /// Fixed-threshold value for size n under this plan's distribution.
    double delta_for(int n) const;
};

/// Derived seeds are pure functions of (master seed, size, instance index,
/// tour index); instance streams use tag 0, tour streams tag 1 + index.
std::uint64_t instance_seed(std::uint64_t master, int n, int instance_index);
std::uint64_t tour_seed(std::uint64_t master, int n, int instance_index, int tour_index);

struct BestMoveTrialRow {
    std::string algo;
    std::string variant;
    int n = 0;
    std::uint64_t seed = 0; // tour seed of the trial
    int trial = 0;          // instance_index * tours_per_instance + tour_index
    SearchStats stats;
    bool found = false;
    double gain = 0.0;
    double wall_ms = 0.0; // informational; written only when the plan records timing
};

struct BestMoveAggregateRow {
    int n = 0;
    std::string algo;
    int trials = 0;
    double mean_moves_evaluated = 0.0;
    double ce_over_greedy = 0.0;    // NaN when either side missing
    double blind_over_greedy = 0.0; // NaN when either side missing
    double fbar = 0.0;              // expected-evals oracle; NaN for tsplib
};

struct BestMoveReport {
    std::vector<BestMoveTrialRow> trials;
    std::vector<BestMoveAggregateRow> aggregates;
};

BestMoveReport run_best_move(const ExperimentPlan& plan);

struct ConvergeRow {
    int n = 0;
    int instance = 0;
    int tour = 0;
    std::string algo; // "ce" or "hybrid"
    double beta = 0.0; // NaN on ce rows
    std::string variant;
    int iterations = 0;
    std::optional<int> switch_iteration;
    std::uint64_t total_evals = 0;
    std::uint64_t evals_100 = 0; // evaluations over the first 100 iterations
    double avg_moves_per_iteration = 0.0;
    double improvement_vs_ce = 0.0; // evaluation savings; 0 on ce rows
    double final_length = 0.0;
};

struct TraceDump {
    int n = 0;
    int instance = 0;
    int tour = 0;
    std::string algo;
    double beta = 0.0;
    ConvergenceTrace trace;
};

struct ConvergeReport {
    std::vector<ConvergeRow> rows;
    std::vector<TraceDump> traces; // filled only when requested
};

ConvergeReport run_converge(const ExperimentPlan& plan, bool keep_traces = false);

struct ValidateRow {
    std::string check;
    int n = 0;
    double alpha_or_lambda = 0.0;
    std::int64_t trials = 0;
    std::int64_t successes = 0;
    double bound = 0.0; // NaN when the check has no reference value
    bool pass = false;
};

std::vector<ValidateRow> run_validate(const ExperimentPlan& plan);

struct FitRow {
    std::string algo;
    FitResult fit;
    int points = 0;
};

std::vector<FitRow> fit_from_aggregates(const std::vector<BestMoveAggregateRow>& aggregates);
std::vector<FitRow> fit_from_csv(std::istream& aggregate_csv);

void write_best_move_trials_csv(const BestMoveReport& report, const ExperimentPlan& plan,
                                std::ostream& out);
void write_best_move_aggregates_csv(const BestMoveReport& report, const ExperimentPlan& plan,
                                    std::ostream& out);
void write_converge_csv(const ConvergeReport& report, const ExperimentPlan& plan,
                        std::ostream& out);
void write_converge_traces_csv(const ConvergeReport& report, const ExperimentPlan& plan,
                               std::ostream& out);
void write_validate_csv(const std::vector<ValidateRow>& rows, const ExperimentPlan& plan,
                        std::ostream& out);
void write_fit_csv(const std::vector<FitRow>& rows, bool header_timestamp, std::ostream& out);

/// Single-run trace in the `iter,algo,gain,evals,length` schema.
void write_trace_csv(const ConvergenceTrace& trace, std::ostream& out);

} // namespace twopt::bench
