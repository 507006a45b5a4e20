#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "twopt/experiments.hpp"

using namespace twopt;
using namespace twopt::bench;

namespace {

struct CliOptions {
    std::string dist = "uniform";
    std::string tsplib;
    std::vector<int> sizes;
    int instances = 0; // 0 = per-command default
    int tours = 0;
    std::vector<std::string> algos = {"ce", "greedy", "blind", "fixed"};
    std::vector<std::string> variant_tokens;
    double alpha = 0.0;
    std::vector<double> betas = {0.3, 0.4, 0.5};
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
    bool no_header_timestamp = false;
    bool traces = false;
    bool no_switch = false;
};

void add_common_options(CLI::App* cmd, CliOptions& opt, bool with_algos) {
    cmd->add_option("--dist", opt.dist, "instance distribution: uniform, euclidean or tsplib")
        ->check(CLI::IsMember({"uniform", "euclidean", "tsplib"}));
    cmd->add_option("--tsplib", opt.tsplib, "TSPLIB file (implies --dist tsplib)");
    cmd->add_option("--sizes", opt.sizes, "comma-separated instance sizes")->delimiter(',');
    cmd->add_option("--instances", opt.instances, "random instances per size");
    cmd->add_option("--tours", opt.tours, "random tours per instance");
    if (with_algos)
        cmd->add_option("--algos", opt.algos, "subset of ce,greedy,blind,fixed")->delimiter(',');
    cmd->add_option("--variant", opt.variant_tokens, "search refinements: strong,dedup")
        ->delimiter(',');
    cmd->add_option("--alpha", opt.alpha,
                    "threshold constant (default 1.89 uniform / 2.5 euclidean)");
    cmd->add_option("--seed", opt.seed, "master seed");
    cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
    cmd->add_option("--out", opt.out, "output CSV path")->required();
    cmd->add_flag("--no-header-timestamp", opt.no_header_timestamp,
                  "suppress the timestamped comment line");
}

ExperimentPlan plan_from(const CliOptions& opt, int default_instances, int default_tours) {
    ExperimentPlan plan;
    plan.dist = opt.tsplib.empty() ? distribution_from_name(opt.dist) : Distribution::Tsplib;
    plan.tsplib_path = opt.tsplib;
    plan.sizes = opt.sizes;
    plan.instances_per_size = opt.instances > 0 ? opt.instances : default_instances;
    plan.tours_per_instance = opt.tours > 0 ? opt.tours : default_tours;
    plan.algorithms = opt.algos;
    for (const std::string& token : opt.variant_tokens) {
        if (token == "strong")
            plan.variant.strong_pivots = true;
        else if (token == "dedup")
            plan.variant.dedup = true;
        else if (token != "basic")
            throw std::invalid_argument("unknown variant token: " + token);
    }
    plan.alpha = opt.alpha;
    plan.betas = opt.betas;
    plan.switch_enabled = !opt.no_switch;
    plan.master_seed = opt.seed;
    plan.threads = opt.threads;
    plan.header_timestamp = !opt.no_header_timestamp;
    if (plan.dist == Distribution::Tsplib &&
        plan.algorithms == std::vector<std::string>{"ce", "greedy", "blind", "fixed"})
        plan.algorithms = {"ce", "greedy", "blind"}; // no threshold family on tsplib costs
    return plan;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out.is_open())
        throw std::runtime_error("cannot open output file: " + path);
    return out;
}

std::string sibling_path(const std::string& path, const char* tag) {
    std::filesystem::path p(path);
    const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
    p.replace_extension();
    return p.string() + "." + tag + ext;
}

int cmd_gen(const CliOptions& opt) {
    Instance inst = [&] {
        if (!opt.tsplib.empty())
            return parse_tsplib_file(opt.tsplib);
        if (opt.sizes.size() != 1)
            throw std::invalid_argument("gen needs exactly one size");
        return opt.dist == "euclidean" ? gen_euclidean(opt.sizes[0], opt.seed)
                                       : gen_uniform(opt.sizes[0], opt.seed);
    }();
    std::ofstream out = open_out(opt.out);
    write_snapshot_csv(inst, out);
    return 0;
}

int cmd_best_move(const CliOptions& opt) {
    const ExperimentPlan plan = plan_from(opt, 100, 10);
    const BestMoveReport report = run_best_move(plan);
    std::ofstream trials = open_out(opt.out);
    write_best_move_trials_csv(report, plan, trials);
    std::ofstream aggs = open_out(sibling_path(opt.out, "agg"));
    write_best_move_aggregates_csv(report, plan, aggs);
    return 0;
}

int cmd_converge(const CliOptions& opt) {
    const ExperimentPlan plan = plan_from(opt, 3, 1);
    const ConvergeReport report = run_converge(plan, opt.traces);
    std::ofstream out = open_out(opt.out);
    write_converge_csv(report, plan, out);
    if (opt.traces) {
        std::ofstream traces = open_out(sibling_path(opt.out, "trace"));
        write_converge_traces_csv(report, plan, traces);
    }
    return 0;
}

int cmd_validate(const CliOptions& opt) {
    const ExperimentPlan plan = plan_from(opt, 100, 10);
    const std::vector<ValidateRow> rows = run_validate(plan);
    std::ofstream out = open_out(opt.out);
    write_validate_csv(rows, plan, out);
    bool all_pass = true;
    for (const auto& row : rows)
        all_pass = all_pass && row.pass;
    return all_pass ? 0 : 3;
}

int cmd_fit(const std::string& in_path, const std::string& out_path, bool no_timestamp) {
    std::ifstream in(in_path);
    if (!in.is_open())
        throw std::runtime_error("cannot open aggregate csv: " + in_path);
    const std::vector<FitRow> rows = fit_from_csv(in);
    if (out_path.empty()) {
        write_fit_csv(rows, !no_timestamp, std::cout);
    } else {
        std::ofstream out = open_out(out_path);
        write_fit_csv(rows, !no_timestamp, out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"best 2-opt move search: exhaustive, greedy/blind pruned and fixed-threshold "
                 "strategies with experiment drivers"};
    app.require_subcommand(1);

    CliOptions gen_opt, bm_opt, cv_opt, va_opt;
    std::string fit_in, fit_out;
    bool fit_no_timestamp = false;

    CLI::App* gen = app.add_subcommand("gen", "generate an instance and snapshot it as u,v,cost");
    gen->add_option("--dist", gen_opt.dist)->check(CLI::IsMember({"uniform", "euclidean"}));
    gen->add_option("--tsplib", gen_opt.tsplib, "snapshot a TSPLIB file instead");
    gen->add_option("--sizes", gen_opt.sizes, "node count")->delimiter(',');
    gen->add_option("--seed", gen_opt.seed);
    gen->add_option("--out", gen_opt.out)->required();

    CLI::App* bm = app.add_subcommand("best-move",
                                      "average moves evaluated to find the best move on random "
                                      "tours; writes trials plus .agg aggregates");
    add_common_options(bm, bm_opt, /*with_algos=*/true);

    CLI::App* cv = app.add_subcommand("converge",
                                      "full local-search convergences: exhaustive baseline vs "
                                      "hybrid switch at each beta");
    add_common_options(cv, cv_opt, /*with_algos=*/false);
    cv->add_option("--beta", cv_opt.betas, "switch budgets in (0,1/2]")->delimiter(',');
    cv->add_flag("--traces", cv_opt.traces, "also write per-iteration traces (.trace)");
    cv->add_flag("--no-switch", cv_opt.no_switch, "never fall back to exhaustive enumeration");

    CLI::App* va = app.add_subcommand("validate",
                                      "probabilistic validators: threshold-search success, "
                                      "dominance, tail bound, witness frequencies");
    add_common_options(va, va_opt, /*with_algos=*/false);

    CLI::App* fit = app.add_subcommand("fit", "power-law fit of aggregate move counts");
    fit->add_option("--in", fit_in, "aggregate csv from best-move")->required();
    fit->add_option("--out", fit_out, "output path (default stdout)");
    fit->add_flag("--no-header-timestamp", fit_no_timestamp);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen(gen_opt);
        if (bm->parsed())
            return cmd_best_move(bm_opt);
        if (cv->parsed())
            return cmd_converge(cv_opt);
        if (va->parsed())
            return cmd_validate(va_opt);
        if (fit->parsed())
            return cmd_fit(fit_in, fit_out, fit_no_timestamp);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
