#include "twopt/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "twopt/rng.hpp"

namespace twopt::bench {

namespace {

constexpr double kDefaultAlphaUniform = 1.89;
constexpr double kDefaultAlphaEuclidean = 2.5;
constexpr std::uint64_t kFbarMcSamples = 10'000'000;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream tags for derived seeds.
enum SeedTag : std::uint64_t {
    kTagInstance = 0,
    kTagTourBase = 1, // + tour index
    kTagFbar = 1u << 16,
    kTagTail = 2u << 16,
    kTagWitness = 3u << 16,
};

void run_tasks(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count)
                    return;
                fn(i);
            }
        });
    }
    for (auto& th : pool)
        th.join();
}

std::string fmt(double v) {
    if (std::isnan(v))
        return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_header_line(const ExperimentPlan& plan, const char* command, std::ostream& out) {
    if (!plan.header_timestamp)
        return;
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    out << "# twopt " << command << " " << stamp << "\n";
}

void validate_common(const ExperimentPlan& plan) {
    if (plan.dist == Distribution::Tsplib) {
        if (plan.tsplib_path.empty())
            throw std::invalid_argument("tsplib distribution needs a file path");
    } else if (plan.sizes.empty()) {
        throw std::invalid_argument("size list must not be empty");
    }
    for (int n : plan.sizes)
        if (n < 4)
            throw std::invalid_argument("sizes must be >= 4");
    if (plan.instances_per_size < 1 || plan.tours_per_instance < 1)
        throw std::invalid_argument("need at least one instance and one tour per size");
    static const std::set<std::string> known = {"ce", "greedy", "blind", "fixed"};
    if (plan.algorithms.empty())
        throw std::invalid_argument("algorithm list must not be empty");
    for (const auto& a : plan.algorithms)
        if (known.count(a) == 0)
            throw std::invalid_argument("unknown algorithm: " + a);
    if (plan.dist == Distribution::Tsplib &&
        std::find(plan.algorithms.begin(), plan.algorithms.end(), "fixed") !=
            plan.algorithms.end())
        throw std::invalid_argument("the fixed-threshold search is defined for uniform and "
                                    "euclidean distributions only");
}

struct SizeSpec {
    int n = 0;
    int instances = 0;
    const Instance* shared = nullptr; // tsplib: one parsed instance for all trials
};

std::vector<SizeSpec> resolve_sizes(const ExperimentPlan& plan, const Instance* tsplib) {
    std::vector<SizeSpec> specs;
    if (plan.dist == Distribution::Tsplib) {
        specs.push_back(SizeSpec{tsplib->n(), 1, tsplib});
    } else {
        for (int n : plan.sizes)
            specs.push_back(SizeSpec{n, plan.instances_per_size, nullptr});
    }
    return specs;
}

Instance make_instance(const ExperimentPlan& plan, int n, int instance_index) {
    const std::uint64_t seed = instance_seed(plan.master_seed, n, instance_index);
    return plan.dist == Distribution::Uniform ? gen_uniform(n, seed) : gen_euclidean(n, seed);
}

} // namespace

const char* distribution_name(Distribution d) {
    switch (d) {
    case Distribution::Uniform:
        return "uniform";
    case Distribution::Euclidean:
        return "euclidean";
    case Distribution::Tsplib:
        return "tsplib";
    }
    return "?";
}

Distribution distribution_from_name(const std::string& name) {
    if (name == "uniform")
        return Distribution::Uniform;
    if (name == "euclidean")
        return Distribution::Euclidean;
    if (name == "tsplib")
        return Distribution::Tsplib;
    throw std::invalid_argument("unknown distribution: " + name);
}

double ExperimentPlan::resolved_alpha() const {
    if (alpha > 0.0)
        return alpha;
    return dist == Distribution::Euclidean ? kDefaultAlphaEuclidean : kDefaultAlphaUniform;
}

double ExperimentPlan::delta_for(int n) const {
    switch (dist) {
    case Distribution::Uniform:
        return delta_uniform(n, resolved_alpha());
    case Distribution::Euclidean:
        return delta_euclidean(n, resolved_alpha());
    case Distribution::Tsplib:
        break;
    }
    throw std::invalid_argument("no threshold family for tsplib instances");
}

std::uint64_t instance_seed(std::uint64_t master, int n, int instance_index) {
    return derive_seed(master, static_cast<std::uint64_t>(n),
                       static_cast<std::uint64_t>(instance_index), kTagInstance);
}

std::uint64_t tour_seed(std::uint64_t master, int n, int instance_index, int tour_index) {
    return derive_seed(master, static_cast<std::uint64_t>(n),
                       static_cast<std::uint64_t>(instance_index),
                       kTagTourBase + static_cast<std::uint64_t>(tour_index));
}

BestMoveReport run_best_move(const ExperimentPlan& plan) {
    validate_common(plan);
    const Instance tsplib_instance = plan.dist == Distribution::Tsplib
                                         ? parse_tsplib_file(plan.tsplib_path)
                                         : Instance::explicit_matrix(4, {0, 0, 0, 0, 0, 0});
    const std::vector<SizeSpec> specs = resolve_sizes(plan, &tsplib_instance);
    const bool want_fixed = std::find(plan.algorithms.begin(), plan.algorithms.end(), "fixed") !=
                            plan.algorithms.end();

    BestMoveReport report;
    for (const SizeSpec& spec : specs) {
        const int n = spec.n;
        const double delta = want_fixed ? plan.delta_for(n) : 0.0;
        std::vector<std::vector<BestMoveTrialRow>> per_instance(
            static_cast<std::size_t>(spec.instances));

        run_tasks(spec.instances, plan.threads, [&](int inst_idx) {
            const Instance local = spec.shared ? Instance::explicit_matrix(4, {0, 0, 0, 0, 0, 0})
                                               : make_instance(plan, n, inst_idx);
            const Instance& inst = spec.shared ? *spec.shared : local;
            const CminTable cmin =
                plan.variant.strong_pivots ? cmin_table(inst) : CminTable{};
            const CminTable* cmin_ptr = plan.variant.strong_pivots ? &cmin : nullptr;

            auto& rows = per_instance[static_cast<std::size_t>(inst_idx)];
            for (int t = 0; t < plan.tours_per_instance; ++t) {
                const std::uint64_t tseed = tour_seed(plan.master_seed, n, inst_idx, t);
                const Tour tour = random_tour(n, tseed);
                const int trial = inst_idx * plan.tours_per_instance + t;
                for (const std::string& algo : plan.algorithms) {
                    BestMoveResult res;
                    std::string variant_str = "basic";
                    const auto algo_start = std::chrono::steady_clock::now();
                    if (algo == "ce") {
                        res = best_move_ce(inst, tour);
                    } else if (algo == "greedy") {
                        res = best_move_greedy(inst, tour, plan.variant, cmin_ptr);
                        variant_str = variant_name(plan.variant);
                    } else if (algo == "blind") {
                        res = best_move_blind(inst, tour, plan.variant, cmin_ptr);
                        variant_str = variant_name(plan.variant);
                    } else {
                        res = best_move_fixed_threshold(inst, tour, delta);
                    }
                    const double wall_ms =
                        std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - algo_start)
                            .count();
                    BestMoveTrialRow row;
                    row.algo = algo;
                    row.variant = variant_str;
                    row.n = n;
                    row.seed = tseed;
                    row.trial = trial;
                    row.stats = res.stats;
                    row.found = res.move.has_value();
                    row.gain = row.found ? res.move->gain : kNaN;
                    row.wall_ms = wall_ms;
                    rows.push_back(std::move(row));
                }
            }
        });

        std::map<std::string, std::pair<int, double>> sums; // algo -> (count, sum evals)
        for (auto& rows : per_instance) {
            for (auto& row : rows) {
                auto& [count, sum] = sums[row.algo];
                ++count;
                sum += static_cast<double>(row.stats.moves_evaluated);
                report.trials.push_back(std::move(row));
            }
        }

        const auto mean_of = [&](const std::string& algo) {
            const auto it = sums.find(algo);
            return it == sums.end() ? kNaN : it->second.second / it->second.first;
        };
        const double mean_ce = mean_of("ce");
        const double mean_greedy = mean_of("greedy");
        const double mean_blind = mean_of("blind");
        double fbar = kNaN;
        if (plan.dist == Distribution::Uniform) {
            fbar = expected_evals_uniform(n, plan.resolved_alpha());
        } else if (plan.dist == Distribution::Euclidean) {
            fbar = expected_evals_euclidean(
                n, plan.resolved_alpha(), kFbarMcSamples,
                derive_seed(plan.master_seed, static_cast<std::uint64_t>(n), 0, kTagFbar));
        }
        for (const std::string& algo : plan.algorithms) {
            BestMoveAggregateRow agg;
            agg.n = n;
            agg.algo = algo;
            agg.trials = sums[algo].first;
            agg.mean_moves_evaluated = mean_of(algo);
            agg.ce_over_greedy = mean_ce / mean_greedy; // NaN propagates
            agg.blind_over_greedy = mean_blind / mean_greedy;
            agg.fbar = fbar;
            report.aggregates.push_back(std::move(agg));
        }
    }
    return report;
}

ConvergeReport run_converge(const ExperimentPlan& plan, bool keep_traces) {
    validate_common(plan);
    for (double beta : plan.betas)
        if (!(beta > 0.0) || beta > 0.5)
            throw std::invalid_argument("beta values must lie in (0, 1/2]");
    const Instance tsplib_instance = plan.dist == Distribution::Tsplib
                                         ? parse_tsplib_file(plan.tsplib_path)
                                         : Instance::explicit_matrix(4, {0, 0, 0, 0, 0, 0});
    const std::vector<SizeSpec> specs = resolve_sizes(plan, &tsplib_instance);

    ConvergeReport report;
    for (const SizeSpec& spec : specs) {
        const int n = spec.n;
        struct InstanceResult {
            std::vector<ConvergeRow> rows;
            std::vector<TraceDump> traces;
        };
        std::vector<InstanceResult> per_instance(static_cast<std::size_t>(spec.instances));

        run_tasks(spec.instances, plan.threads, [&](int inst_idx) {
            const Instance local = spec.shared ? Instance::explicit_matrix(4, {0, 0, 0, 0, 0, 0})
                                               : make_instance(plan, n, inst_idx);
            const Instance& inst = spec.shared ? *spec.shared : local;
            auto& slot = per_instance[static_cast<std::size_t>(inst_idx)];

            for (int t = 0; t < plan.tours_per_instance; ++t) {
                const Tour start = random_tour(n, tour_seed(plan.master_seed, n, inst_idx, t));

                auto make_row = [&](const char* algo, double beta,
                                    const ConvergenceTrace& trace) {
                    ConvergeRow row;
                    row.n = n;
                    row.instance = inst_idx;
                    row.tour = t;
                    row.algo = algo;
                    row.beta = beta;
                    row.variant = variant_name(plan.variant);
                    row.iterations = trace.total_iterations();
                    row.switch_iteration = trace.switch_iteration;
                    row.total_evals = trace.total_evaluations;
                    std::uint64_t first100 = 0;
                    const int upto = std::min(100, trace.total_iterations());
                    for (int k = 0; k < upto; ++k)
                        first100 += trace.iterations[static_cast<std::size_t>(k)].moves_evaluated;
                    row.evals_100 = first100;
                    row.avg_moves_per_iteration =
                        trace.total_iterations() == 0
                            ? kNaN
                            : static_cast<double>(trace.total_evaluations) /
                                  trace.total_iterations();
                    row.final_length = trace.final_length;
                    return row;
                };

                auto [ce_tour, ce_trace] = run_ce_localsearch(inst, start);
                ConvergeRow ce_row = make_row("ce", kNaN, ce_trace);
                ce_row.improvement_vs_ce = 0.0;
                slot.rows.push_back(ce_row);
                if (keep_traces)
                    slot.traces.push_back({n, inst_idx, t, "ce", kNaN, std::move(ce_trace)});

                for (double beta : plan.betas) {
                    HybridConfig cfg;
                    cfg.beta = beta;
                    cfg.variant = plan.variant;
                    cfg.switch_enabled = plan.switch_enabled;
                    auto [hy_tour, hy_trace] = run_hybrid_localsearch(inst, start, cfg);
                    ConvergeRow row = make_row("hybrid", beta, hy_trace);
                    row.improvement_vs_ce =
                        ce_row.total_evals == 0
                            ? 0.0
                            : 1.0 - static_cast<double>(hy_trace.total_evaluations) /
                                        static_cast<double>(ce_row.total_evals);
                    slot.rows.push_back(row);
                    if (keep_traces)
                        slot.traces.push_back({n, inst_idx, t, "hybrid", beta, std::move(hy_trace)});
                }
            }
        });

        for (auto& slot : per_instance) {
            for (auto& r : slot.rows)
                report.rows.push_back(std::move(r));
            for (auto& tr : slot.traces)
                report.traces.push_back(std::move(tr));
        }
    }
    return report;
}

namespace {

struct TrialOutcome {
    double ce_gain = 0.0;
    bool alg_found = false;
    double alg_gain = 0.0;
    bool good = false;
    bool dominance_ok = false;
    bool witness = false; // LS-move witness (uniform plans)
};

bool gains_match(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

} // namespace

std::vector<ValidateRow> run_validate(const ExperimentPlan& plan) {
    validate_common(plan);
    if (plan.dist == Distribution::Tsplib)
        throw std::invalid_argument("validate runs on uniform or euclidean distributions");

    const double alpha = plan.resolved_alpha();
    std::vector<ValidateRow> rows;

    for (int n : plan.sizes) {
        const double delta = plan.delta_for(n);
        const int trials = plan.instances_per_size * plan.tours_per_instance;
        std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));

        run_tasks(plan.instances_per_size, plan.threads, [&](int inst_idx) {
            const Instance inst = make_instance(plan, n, inst_idx);
            const CminTable cmin = plan.variant.strong_pivots ? cmin_table(inst) : CminTable{};
            const CminTable* cmin_ptr = plan.variant.strong_pivots ? &cmin : nullptr;
            for (int t = 0; t < plan.tours_per_instance; ++t) {
                const Tour tour = random_tour(n, tour_seed(plan.master_seed, n, inst_idx, t));
                TrialOutcome& out =
                    outcomes[static_cast<std::size_t>(inst_idx * plan.tours_per_instance + t)];

                const BestMoveResult ce = best_move_ce(inst, tour);
                out.ce_gain = ce.move->gain;
                const BestMoveResult alg = best_move_fixed_threshold(inst, tour, delta);
                out.alg_found = alg.move.has_value();
                out.alg_gain = out.alg_found ? alg.move->gain : kNaN;
                out.good = instance_is_good(out.ce_gain, delta);
                if (out.good) {
                    const BestMoveResult greedy =
                        best_move_greedy(inst, tour, plan.variant, cmin_ptr);
                    const std::set<int> alg_set(alg.expanded_edges.begin(),
                                                alg.expanded_edges.end());
                    out.dominance_ok = std::all_of(
                        greedy.expanded_edges.begin(), greedy.expanded_edges.end(),
                        [&](int e) { return alg_set.count(e) > 0; });
                }
                if (plan.dist == Distribution::Uniform)
                    out.witness = ls_move_exists(inst, tour, n, alpha);
            }
        });

        std::int64_t ok = 0, err0 = 0, err1 = 0, good = 0, dom_ok = 0, good_opt = 0,
                     witnesses = 0, witness_gain_ok = 0;
        for (const TrialOutcome& out : outcomes) {
            const bool success = out.alg_found && gains_match(out.alg_gain, out.ce_gain);
            ok += success;
            err0 += !out.alg_found;
            err1 += out.alg_found && !success;
            if (out.good) {
                ++good;
                dom_ok += out.dominance_ok;
                good_opt += success;
            }
            if (out.witness) {
                ++witnesses;
                witness_gain_ok += out.ce_gain > 2.0 * delta;
            }
        }

        rows.push_back({"alg_success", n, alpha, trials, ok, 0.99,
                        static_cast<double>(ok) / trials >= 0.99});
        rows.push_back({"alg_err0", n, alpha, trials, err0, kNaN, true});
        rows.push_back({"alg_err1", n, alpha, trials, err1, kNaN, true});
        rows.push_back({"dominance_good", n, alpha, good, dom_ok, 1.0, dom_ok == good});
        rows.push_back({"good_implies_optimal", n, alpha, good, good_opt, 1.0, good_opt == good});
        if (plan.dist == Distribution::Uniform) {
            const double limit = ls_move_absence_limit(alpha);
            const double no_witness_rate = static_cast<double>(trials - witnesses) / trials;
            const double sigma = std::sqrt(std::max(no_witness_rate * (1.0 - no_witness_rate),
                                                    1.0 / trials) /
                                           trials);
            rows.push_back({"ls_move_absence", n, alpha, trials, trials - witnesses, limit,
                            no_witness_rate <= limit + 3.0 * sigma});
            rows.push_back({"ls_move_gain", n, alpha, witnesses, witness_gain_ok, 1.0,
                            witness_gain_ok == witnesses});
        }
    }

    if (plan.dist == Distribution::Euclidean) {
        // Witness-frequency bound at a configuration where it is informative,
        // and the gain identity where exhaustive verification is cheap.
        const struct {
            int n;
            double lambda;
            bool check_gain;
        } configs[] = {{4096, 1.3, false}, {1000, 0.9, true}};
        for (const auto& cfg : configs) {
            const int trials = plan.instances_per_size * plan.tours_per_instance;
            const double two_delta =
                2.0 * (std::sqrt(2.0) -
                       5.0 * std::sqrt(2.0) * cfg.lambda /
                           std::pow(static_cast<double>(cfg.n), 0.25));
            std::vector<int> witness(static_cast<std::size_t>(trials), 0);
            std::vector<int> gain_ok(static_cast<std::size_t>(trials), 0);
            run_tasks(plan.instances_per_size, plan.threads, [&](int inst_idx) {
                const std::uint64_t base =
                    derive_seed(plan.master_seed, static_cast<std::uint64_t>(cfg.n),
                                static_cast<std::uint64_t>(inst_idx), kTagWitness);
                const Instance inst = gen_euclidean(cfg.n, base);
                for (int t = 0; t < plan.tours_per_instance; ++t) {
                    const int idx = inst_idx * plan.tours_per_instance + t;
                    const Tour tour = random_tour(cfg.n, derive_seed(base, 1 + t));
                    if (!d_uncross_exists(inst, tour, cfg.lambda))
                        continue;
                    witness[static_cast<std::size_t>(idx)] = 1;
                    if (cfg.check_gain) {
                        const BestMoveResult ce = best_move_ce(inst, tour);
                        gain_ok[static_cast<std::size_t>(idx)] = ce.move->gain > two_delta;
                    }
                }
            });
            std::int64_t witnesses = 0, ok = 0;
            for (int i = 0; i < trials; ++i) {
                witnesses += witness[static_cast<std::size_t>(i)];
                ok += gain_ok[static_cast<std::size_t>(i)];
            }
            if (cfg.check_gain) {
                rows.push_back({"d_uncross_gain", cfg.n, cfg.lambda, witnesses, ok, 1.0,
                                ok == witnesses});
            } else {
                const double bound = d_cross_absence_bound(cfg.n, cfg.lambda);
                const double no_rate = static_cast<double>(trials - witnesses) / trials;
                const double sigma =
                    std::sqrt(std::max(no_rate * (1.0 - no_rate), 1.0 / trials) / trials);
                rows.push_back({"d_uncross_absence", cfg.n, cfg.lambda, trials,
                                trials - witnesses, bound, no_rate <= bound + 3.0 * sigma});
            }
        }
    }

    const double tail_ds[] = {1.06, 1.1, 1.2, 1.3, 1.41};
    constexpr std::uint64_t kTailSamples = 10'000'000;
    for (double d : tail_ds) {
        const McEstimate mc = mc_tail_probability(
            d, kTailSamples,
            derive_seed(plan.master_seed, static_cast<std::uint64_t>(d * 1000), 0, kTagTail));
        const double bound = tail_bound(d);
        rows.push_back({"tail_bound", 0, d, static_cast<std::int64_t>(kTailSamples),
                        static_cast<std::int64_t>(mc.estimate * kTailSamples + 0.5), bound,
                        mc.estimate <= bound + 3.0 * mc.std_error});
    }
    return rows;
}

std::vector<FitRow> fit_from_aggregates(const std::vector<BestMoveAggregateRow>& aggregates) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<double, double>>> grouped;
    for (const auto& agg : aggregates) {
        if (std::isnan(agg.mean_moves_evaluated))
            continue;
        if (grouped.find(agg.algo) == grouped.end())
            order.push_back(agg.algo);
        grouped[agg.algo].emplace_back(static_cast<double>(agg.n), agg.mean_moves_evaluated);
    }
    std::vector<FitRow> rows;
    for (const auto& algo : order) {
        const auto& pts = grouped[algo];
        if (pts.size() < 3)
            throw std::invalid_argument("fit needs aggregates for at least 3 sizes (algo " +
                                        algo + " has " + std::to_string(pts.size()) + ")");
        rows.push_back({algo, power_fit(pts), static_cast<int>(pts.size())});
    }
    return rows;
}

std::vector<FitRow> fit_from_csv(std::istream& aggregate_csv) {
    std::string line;
    std::vector<std::string> header;
    std::vector<BestMoveAggregateRow> aggs;
    while (std::getline(aggregate_csv, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        if (header.empty()) {
            header = fields;
            continue;
        }
        const auto col = [&](const char* name) -> int {
            const auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end())
                throw std::runtime_error(std::string("aggregate csv: missing column ") + name);
            return static_cast<int>(it - header.begin());
        };
        if (fields.size() < header.size())
            fields.resize(header.size());
        BestMoveAggregateRow agg;
        agg.n = std::stoi(fields[static_cast<std::size_t>(col("n"))]);
        agg.algo = fields[static_cast<std::size_t>(col("algo"))];
        const std::string mean = fields[static_cast<std::size_t>(col("mean_moves_evaluated"))];
        agg.mean_moves_evaluated = mean.empty() ? kNaN : std::stod(mean);
        aggs.push_back(std::move(agg));
    }
    if (aggs.empty())
        throw std::runtime_error("aggregate csv: no data rows");
    return fit_from_aggregates(aggs);
}

void write_best_move_trials_csv(const BestMoveReport& report, const ExperimentPlan& plan,
                                std::ostream& out) {
    write_header_line(plan, "best-move", out);
    out << "algo,variant,n,seed,trial,moves_evaluated,edges_expanded,selections,gain,found\n";
    for (const auto& row : report.trials) {
        out << row.algo << ',' << row.variant << ',' << row.n << ',' << row.seed << ','
            << row.trial << ',' << row.stats.moves_evaluated << ',' << row.stats.edges_expanded
            << ',' << row.stats.selections << ',' << fmt(row.gain) << ',' << (row.found ? 1 : 0)
            << '\n';
    }
}

void write_best_move_aggregates_csv(const BestMoveReport& report, const ExperimentPlan& plan,
                                    std::ostream& out) {
    write_header_line(plan, "best-move aggregates", out);
    out << "n,algo,trials,mean_moves_evaluated,ce_over_greedy,blind_over_greedy,fbar\n";
    for (const auto& agg : report.aggregates) {
        out << agg.n << ',' << agg.algo << ',' << agg.trials << ','
            << fmt(agg.mean_moves_evaluated) << ',' << fmt(agg.ce_over_greedy) << ','
            << fmt(agg.blind_over_greedy) << ',' << fmt(agg.fbar) << '\n';
    }
}

void write_converge_csv(const ConvergeReport& report, const ExperimentPlan& plan,
                        std::ostream& out) {
    write_header_line(plan, "converge", out);
    out << "n,instance,tour,algo,beta,variant,L,s,total_evals,evals_100,avgMpI,impr_tot,"
           "final_length\n";
    for (const auto& row : report.rows) {
        out << row.n << ',' << row.instance << ',' << row.tour << ',' << row.algo << ','
            << fmt(row.beta) << ',' << row.variant << ',' << row.iterations << ',';
        if (row.switch_iteration.has_value())
            out << *row.switch_iteration;
        out << ',' << row.total_evals << ',' << row.evals_100 << ','
            << fmt(row.avg_moves_per_iteration) << ',' << fmt(row.improvement_vs_ce) << ','
            << fmt(row.final_length) << '\n';
    }
}

void write_trace_csv(const ConvergenceTrace& trace, std::ostream& out) {
    out << "iter,algo,gain,evals,length\n";
    for (const auto& it : trace.iterations) {
        out << it.iteration << ',' << (it.used_ce ? "ce" : "greedy") << ',' << fmt(it.gain) << ','
            << it.moves_evaluated << ',' << fmt(it.length) << '\n';
    }
}

void write_converge_traces_csv(const ConvergeReport& report, const ExperimentPlan& plan,
                               std::ostream& out) {
    write_header_line(plan, "converge traces", out);
    out << "n,instance,tour,algo,beta,iter,iter_algo,gain,evals,length\n";
    for (const auto& dump : report.traces) {
        for (const auto& it : dump.trace.iterations) {
            out << dump.n << ',' << dump.instance << ',' << dump.tour << ',' << dump.algo << ','
                << fmt(dump.beta) << ',' << it.iteration << ',' << (it.used_ce ? "ce" : "greedy")
                << ',' << fmt(it.gain) << ',' << it.moves_evaluated << ',' << fmt(it.length)
                << '\n';
        }
    }
}

void write_validate_csv(const std::vector<ValidateRow>& rows, const ExperimentPlan& plan,
                        std::ostream& out) {
    write_header_line(plan, "validate", out);
    out << "check,n,alpha_or_lambda,trials,successes,bound,pass\n";
    for (const auto& row : rows) {
        out << row.check << ',' << row.n << ',' << fmt(row.alpha_or_lambda) << ',' << row.trials
            << ',' << row.successes << ',' << fmt(row.bound) << ',' << (row.pass ? 1 : 0) << '\n';
    }
}

void write_fit_csv(const std::vector<FitRow>& rows, bool header_timestamp, std::ostream& out) {
    ExperimentPlan dummy;
    dummy.header_timestamp = header_timestamp;
    write_header_line(dummy, "fit", out);
    out << "algo,a,b,residual,points\n";
    for (const auto& row : rows) {
        out << row.algo << ',' << fmt(row.fit.a) << ',' << fmt(row.fit.b) << ','
            << fmt(row.fit.residual) << ',' << row.points << '\n';
    }
}

} // namespace twopt::bench
