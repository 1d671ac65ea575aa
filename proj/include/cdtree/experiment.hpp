#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cdtree/baselines.hpp"
#include "cdtree/io.hpp"
#include "cdtree/metrics.hpp"
#include "cdtree/search.hpp"
#include "cdtree/synth.hpp"

namespace cdtree {

using nlohmann::json;

inline constexpr int kReportVersion = 1;

struct RunConfig {
    std::string method = "cduct";  // cduct | greedy | random_search | random_sampling
    ScoreKind kind = ScoreKind::dv;
    Backend backend = Backend::linear;
    int edge_budget = -1;      // -1: use the truth edge count
    int sims_multiplier = 1000;
    int horizon = 0;           // 0: pick a default from the graph size
    double exploration = 0.05;
    std::vector<uint64_t> seeds = {0};
    bool prune_enabled = false;
    double significance = 0.001;
    Backend prune_backend = Backend::linear;
    bool standardize = false;
    bool greedy_require_improvement = true;
    int threads = 1;

    std::string dataset_path;
    std::string truth_path;   // optional
    std::string output_path;  // optional
};

// Full search horizon up to d = 11, then reduced as the search space grows.
int default_horizon(int d, int edge_budget);

json run_config_to_json(const RunConfig& cfg);

// Construct (and optionally prune) once per seed, aggregate with Student-t
// 95% confidence half-widths. All wall-clock data lives under "timings" so
// the rest of the report is a deterministic function of (config, seeds).
json run_experiment(const ObservationDataset& data, const std::optional<Dag>& truth,
                    const RunConfig& cfg);
json run_experiment_from_files(const RunConfig& cfg);

struct BenchConfig {
    std::vector<int> d_values = {10, 20, 30, 40, 50};
    double edge_prob = 0.1;
    int sims_multiplier = 10;
    int repeats = 1;
    int n = 100;
    int budget_cap = 10;  // keeps the naive variant tractable at d = 50
    int horizon = 8;      // fixed across d so per-d workloads stay comparable
    Mechanism mechanism = Mechanism::quadratic;
    ScoreKind kind = ScoreKind::dv;
    Backend backend = Backend::quadratic;
    uint64_t seed = 0;
};

// Runs CD-UCT twice per instance, once with the incremental cycle tracker
// and once with naive per-candidate traversals, same seeds. Identical
// outputs are a hard correctness gate; wall times give the speedup per d.
json bench_cycle_tracking(const BenchConfig& cfg);

struct SweepConfig {
    std::string axis = "edge_count";  // edge_count | n_datapoints
    std::vector<double> values;
    std::vector<std::string> methods = {"cduct", "greedy", "random_search", "random_sampling"};
    int d = 10;
    int base_edge_count = 15;
    int base_n = 1000;
    Mechanism mechanism = Mechanism::quadratic;
    double noise_std = 1.0;
    RunConfig run;  // score/backend/budget/sims/seed settings shared by all cells
};

// Long-format rows (one per axis value x method x seed), suitable for
// plotting density / dataset-size curves.
json sweep(const SweepConfig& cfg);
std::string sweep_to_csv(const json& sweep_report);

}  // namespace cdtree
