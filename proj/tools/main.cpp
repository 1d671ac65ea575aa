#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cdtree/experiment.hpp"

using namespace cdtree;

namespace {

void write_or_print(const json& report, const std::string& path) {
    if (path.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << report.dump(2) << "\n";
}

std::vector<uint64_t> parse_seeds(const std::string& spec) {
    std::vector<uint64_t> seeds;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const auto dash = tok.find("..");
        if (dash == std::string::npos) {
            seeds.push_back(std::stoull(tok));
        } else {
            const uint64_t lo = std::stoull(tok.substr(0, dash));
            const uint64_t hi = std::stoull(tok.substr(dash + 2));
            for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        }
    }
    if (seeds.empty()) throw std::runtime_error("no seeds in: " + spec);
    return seeds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Score-based causal discovery by tree search in DAG space"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a TOML/INI config file");
    app.allow_config_extras(true);

    // ---- discover ----
    auto* discover = app.add_subcommand("discover", "Run construct-then-prune on a dataset");
    RunConfig rc;
    std::string seeds_spec = "0";
    std::string score = "dv", backend = "linear", prune_backend = "linear";
    discover->add_option("--data", rc.dataset_path, "Dataset CSV")->required();
    discover->add_option("--truth", rc.truth_path, "Ground-truth edge-list or adjacency CSV");
    discover->add_option("--method", rc.method,
                         "cduct | greedy | random_search | random_sampling");
    discover->add_option("--score", score, "dv | ev");
    discover->add_option("--backend", backend, "linear | quadratic | gp");
    discover->add_option("--budget", rc.edge_budget, "Edge budget (default: truth edge count)");
    discover->add_option("--sims", rc.sims_multiplier, "Simulation multiplier b_sims");
    discover->add_option("--horizon", rc.horizon, "Rollout horizon (0 = auto)");
    discover->add_option("--cp", rc.exploration, "UCT exploration constant");
    discover->add_option("--seeds", seeds_spec, "Comma list and/or ranges, e.g. 0,5,10..19");
    discover->add_flag("--prune", rc.prune_enabled, "Apply significance pruning");
    discover->add_option("--significance", rc.significance, "Pruning significance level");
    discover->add_option("--prune-backend", prune_backend, "linear | quadratic");
    discover->add_flag("--standardize", rc.standardize, "Standardize dataset columns");
    discover->add_flag("!--no-greedy-improvement", rc.greedy_require_improvement,
                       "Let greedy exhaust the budget even without improvement");
    discover->add_option("--threads", rc.threads, "Worker threads across seeds");
    discover->add_option("--out", rc.output_path, "Report JSON path (default: stdout)");

    // ---- generate ----
    auto* generate = app.add_subcommand("generate", "Generate a synthetic SEM benchmark");
    int gen_d = 10, gen_n = 1000;
    int gen_edges = -1;
    double gen_prob = -1.0, gen_noise = 1.0;
    uint64_t gen_seed = 0;
    std::string gen_mech = "linear", gen_out, gen_truth_out;
    generate->add_option("--d", gen_d, "Number of variables")->required();
    generate->add_option("--edges", gen_edges, "Exact edge count");
    generate->add_option("--edge-prob", gen_prob, "Per-pair edge probability");
    generate->add_option("--n", gen_n, "Number of observations");
    generate->add_option("--mechanism", gen_mech, "linear | quadratic | gp");
    generate->add_option("--noise-std", gen_noise, "Additive noise standard deviation");
    generate->add_option("--seed", gen_seed, "RNG seed");
    generate->add_option("--out", gen_out, "Dataset CSV path")->required();
    generate->add_option("--truth-out", gen_truth_out, "Ground-truth edge-list CSV path")
        ->required();

    // ---- bench-cycles ----
    auto* bench = app.add_subcommand(
        "bench-cycles", "Time incremental vs naive cycle-candidate tracking");
    BenchConfig bc;
    std::string bench_out;
    bench->add_option("--d-values", bc.d_values, "Graph sizes to benchmark")->delimiter(',');
    bench->add_option("--edge-prob", bc.edge_prob, "True-graph edge probability");
    bench->add_option("--sims", bc.sims_multiplier, "Simulation multiplier");
    bench->add_option("--repeats", bc.repeats, "Timed repetitions per size");
    bench->add_option("--n", bc.n, "Dataset size");
    bench->add_option("--budget-cap", bc.budget_cap, "Edge budget cap");
    bench->add_option("--horizon", bc.horizon, "Rollout horizon");
    bench->add_option("--seed", bc.seed, "RNG seed");
    bench->add_option("--out", bench_out, "Report JSON path (default: stdout)");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep graph density or dataset size");
    SweepConfig sw;
    std::string sweep_out, sweep_csv_out, sweep_mech = "quadratic";
    std::string sweep_seeds = "0..19";
    sweep_cmd->add_option("--axis", sw.axis, "edge_count | n_datapoints")->required();
    sweep_cmd->add_option("--values", sw.values, "Axis values")->required()->delimiter(',');
    sweep_cmd->add_option("--methods", sw.methods, "Methods to run")->delimiter(',');
    sweep_cmd->add_option("--d", sw.d, "Number of variables");
    sweep_cmd->add_option("--base-edges", sw.base_edge_count, "Edge count when sweeping n");
    sweep_cmd->add_option("--base-n", sw.base_n, "Dataset size when sweeping edge_count");
    sweep_cmd->add_option("--mechanism", sweep_mech, "linear | quadratic | gp");
    sweep_cmd->add_option("--noise-std", sw.noise_std, "Additive noise standard deviation");
    sweep_cmd->add_option("--score", score, "dv | ev");
    sweep_cmd->add_option("--backend", backend, "linear | quadratic | gp");
    sweep_cmd->add_option("--sims", sw.run.sims_multiplier, "Simulation multiplier");
    sweep_cmd->add_option("--cp", sw.run.exploration, "UCT exploration constant");
    sweep_cmd->add_option("--seeds", sweep_seeds, "Seeds per cell");
    sweep_cmd->add_option("--threads", sw.run.threads, "Worker threads across seeds");
    sweep_cmd->add_option("--out", sweep_out, "Report JSON path");
    sweep_cmd->add_option("--csv-out", sweep_csv_out, "Flat CSV path");

    // ---- metrics ----
    auto* metrics_cmd =
        app.add_subcommand("metrics", "Compare a predicted graph against a ground truth");
    std::string pred_path, truth_path;
    int metrics_d = 0;
    metrics_cmd->add_option("--pred", pred_path, "Predicted graph CSV")->required();
    metrics_cmd->add_option("--truth", truth_path, "Ground-truth graph CSV")->required();
    metrics_cmd->add_option("--d", metrics_d, "Number of nodes")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*discover) {
            rc.kind = score_kind_from_string(score);
            rc.backend = backend_from_string(backend);
            rc.prune_backend = backend_from_string(prune_backend);
            rc.seeds = parse_seeds(seeds_spec);
            const json report = run_experiment_from_files(rc);
            write_or_print(report, rc.output_path);
            if (report.contains("all_seeds_failed")) {
                std::cerr << "error: all seeds failed\n";
                return 2;
            }
        } else if (*generate) {
            Rng rng(gen_seed);
            std::optional<int> edges;
            std::optional<double> prob;
            if (gen_edges >= 0) edges = gen_edges;
            if (gen_prob >= 0) prob = gen_prob;
            const Dag truth = sample_er_dag(gen_d, edges, prob, rng);
            SemSpec spec{truth, mechanism_from_string(gen_mech), gen_noise};
            const ObservationDataset data = sample_data(spec, gen_n, rng);
            save_dataset(data, gen_out);
            save_truth_edge_list(truth, gen_truth_out);
            std::cout << "wrote " << gen_out << " (" << gen_n << "x" << gen_d << ") and "
                      << gen_truth_out << " (" << truth.edge_count() << " edges)\n";
        } else if (*bench) {
            const json report = bench_cycle_tracking(bc);
            write_or_print(report, bench_out);
        } else if (*sweep_cmd) {
            sw.mechanism = mechanism_from_string(sweep_mech);
            sw.run.kind = score_kind_from_string(score);
            sw.run.backend = backend_from_string(backend);
            sw.run.seeds = parse_seeds(sweep_seeds);
            const json report = sweep(sw);
            if (!sweep_csv_out.empty()) {
                std::ofstream out(sweep_csv_out);
                if (!out) throw std::runtime_error("cannot write file: " + sweep_csv_out);
                out << sweep_to_csv(report);
            }
            write_or_print(report, sweep_out);
        } else if (*metrics_cmd) {
            const Dag pred = load_truth(pred_path, metrics_d);
            const Dag truth = load_truth(truth_path, metrics_d);
            const GraphMetrics m = compute_metrics(pred, truth);
            std::cout << json{{"tpr", m.tpr}, {"fdr", m.fdr}, {"shd", m.shd}}.dump(2) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
