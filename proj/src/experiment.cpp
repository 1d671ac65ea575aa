#include "cdtree/experiment.hpp"

#include <atomic>
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cdtree {

namespace {

double now_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

json metrics_to_json(const GraphMetrics& m) {
    return json{{"tpr", m.tpr},
                {"fdr", m.fdr},
                {"shd", m.shd},
                {"true_positives", m.true_positives},
                {"false_positives", m.false_positives},
                {"false_negatives", m.false_negatives},
                {"reversed", m.reversed}};
}

// Mean and Student-t 95% confidence half-width over seeds.
json aggregate_values(const std::vector<double>& xs) {
    const size_t n = xs.size();
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    double half = 0.0;
    if (n > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        if (sd > 0) {
            const boost::math::students_t dist(static_cast<double>(n - 1));
            half = boost::math::quantile(dist, 0.975) * sd / std::sqrt(static_cast<double>(n));
        }
    }
    return json{{"mean", mean}, {"ci95", half}};
}

void append_aggregate(json& agg, const json& rows, const std::string& section,
                      const std::string& field) {
    std::vector<double> xs;
    for (const auto& row : rows) {
        if (!row.contains(section)) continue;
        const auto& sec = row.at(section);
        if (sec.contains(field)) xs.push_back(sec.at(field).get<double>());
    }
    if (!xs.empty()) agg[section][field] = aggregate_values(xs);
}

SearchResult dispatch_method(const RunConfig& cfg, const Env& env, Scorer& scorer, int horizon,
                             uint64_t seed) {
    if (cfg.method == "cduct") {
        SearchConfig sc;
        sc.exploration = cfg.exploration;
        sc.sims_multiplier = cfg.sims_multiplier;
        sc.horizon = horizon;
        sc.seed = seed;
        return run_cduct(env, scorer, sc);
    }
    if (cfg.method == "greedy")
        return greedy_search(env, scorer, GreedyConfig{cfg.greedy_require_improvement});
    Rng rng(seed);
    if (cfg.method == "random_search")
        return random_search(env, scorer, cfg.sims_multiplier, rng);
    if (cfg.method == "random_sampling") return random_sampling(env, scorer, rng);
    throw std::invalid_argument("unknown method: " + cfg.method);
}

}  // namespace

int default_horizon(int d, int edge_budget) {
    if (d <= 11) return std::max(1, 2 * edge_budget);
    if (d <= 30) return 16;
    return 8;
}

json run_config_to_json(const RunConfig& cfg) {
    return json{{"method", cfg.method},
                {"score", to_string(cfg.kind)},
                {"backend", to_string(cfg.backend)},
                {"edge_budget", cfg.edge_budget},
                {"sims_multiplier", cfg.sims_multiplier},
                {"horizon", cfg.horizon},
                {"exploration", cfg.exploration},
                {"seeds", cfg.seeds},
                {"prune", cfg.prune_enabled},
                {"significance", cfg.significance},
                {"prune_backend", to_string(cfg.prune_backend)},
                {"standardize", cfg.standardize},
                {"greedy_require_improvement", cfg.greedy_require_improvement},
                {"dataset", cfg.dataset_path},
                {"truth", cfg.truth_path}};
}

json run_experiment(const ObservationDataset& raw_data, const std::optional<Dag>& truth,
                    const RunConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    if (cfg.seeds.empty()) throw std::invalid_argument("run_experiment: no seeds given");
    const ObservationDataset data = cfg.standardize ? raw_data.standardized() : raw_data;
    const int d = data.d();
    if (truth && truth->node_count() != d)
        throw std::invalid_argument("run_experiment: truth node count does not match dataset");
    int budget = cfg.edge_budget;
    if (budget < 0) {
        if (!truth)
            throw std::invalid_argument(
                "run_experiment: edge_budget unset and no truth graph to infer it from");
        budget = truth->edge_count();
    }
    const int horizon = cfg.horizon > 0 ? cfg.horizon : default_horizon(d, budget);

    const size_t num_seeds = cfg.seeds.size();
    std::vector<json> rows(num_seeds);
    std::vector<json> seed_timings(num_seeds);
    std::atomic<size_t> next{0};
    std::atomic<int> failures{0};

    auto worker = [&]() {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= num_seeds) return;
            const uint64_t seed = cfg.seeds[idx];
            json row{{"seed", seed}};
            json timing{{"seed", seed}};
            try {
                // Each seed owns its env, scorer, and cache.
                Env env(EnvConfig{budget, Dag(d)});
                Scorer scorer(data, cfg.kind, cfg.backend);
                const SearchResult result = dispatch_method(cfg, env, scorer, horizon, seed);
                json construct{{"reward", result.best_reward},
                               {"score", -result.best_reward},
                               {"edge_count", result.final_dag.edge_count()},
                               {"actions", result.best_actions},
                               {"score_evaluations", result.score_evaluations}};
                if (truth) construct["metrics"] = metrics_to_json(compute_metrics(result.final_dag, *truth));
                row["construct"] = std::move(construct);
                timing["construct_seconds"] = result.wall_seconds;
                if (cfg.prune_enabled) {
                    const auto t_prune = std::chrono::steady_clock::now();
                    const Dag pruned = prune(data, result.final_dag, cfg.significance,
                                             cfg.prune_backend);
                    json pj{{"edge_count", pruned.edge_count()}};
                    if (truth) pj["metrics"] = metrics_to_json(compute_metrics(pruned, *truth));
                    row["prune"] = std::move(pj);
                    timing["prune_seconds"] = now_seconds(t_prune);
                }
            } catch (const std::exception& e) {
                row["error"] = e.what();
                failures.fetch_add(1);
            }
            rows[idx] = std::move(row);
            seed_timings[idx] = std::move(timing);
        }
    };

    const int nthreads =
        std::max(1, std::min<int>(cfg.threads, static_cast<int>(num_seeds)));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    json report;
    report["version"] = kReportVersion;
    json config = run_config_to_json(cfg);
    config["edge_budget"] = budget;
    config["horizon"] = horizon;
    report["config"] = std::move(config);
    report["seeds"] = rows;

    json agg;
    {
        // flatten per-seed scalars for aggregation
        json flat = json::array();
        for (const auto& row : rows) {
            if (row.contains("error")) continue;
            json f;
            f["construct"] = {{"reward", row["construct"]["reward"]},
                              {"edge_count", row["construct"]["edge_count"]},
                              {"score_evaluations", row["construct"]["score_evaluations"]}};
            if (row["construct"].contains("metrics"))
                for (const auto& key : {"tpr", "fdr", "shd"})
                    f["construct"][key] = row["construct"]["metrics"][key];
            if (row.contains("prune")) {
                f["prune"] = {{"edge_count", row["prune"]["edge_count"]}};
                if (row["prune"].contains("metrics"))
                    for (const auto& key : {"tpr", "fdr", "shd"})
                        f["prune"][key] = row["prune"]["metrics"][key];
            }
            flat.push_back(std::move(f));
        }
        for (const auto& field : {"reward", "edge_count", "score_evaluations", "tpr", "fdr", "shd"})
            append_aggregate(agg, flat, "construct", field);
        for (const auto& field : {"edge_count", "tpr", "fdr", "shd"})
            append_aggregate(agg, flat, "prune", field);
        agg["seeds_failed"] = failures.load();
    }
    report["aggregate"] = std::move(agg);
    report["timings"] =
        json{{"total_seconds", now_seconds(t_start)}, {"per_seed", seed_timings}};
    if (failures.load() == static_cast<int>(num_seeds))
        report["all_seeds_failed"] = true;
    return report;
}

json run_experiment_from_files(const RunConfig& cfg) {
    const ObservationDataset data = load_dataset(cfg.dataset_path);
    std::optional<Dag> truth;
    if (!cfg.truth_path.empty()) truth = load_truth(cfg.truth_path, data.d());
    return run_experiment(data, truth, cfg);
}

json bench_cycle_tracking(const BenchConfig& cfg) {
    json rows = json::array();
    for (int d : cfg.d_values) {
        Rng gen_rng(cfg.seed * 7919 + static_cast<uint64_t>(d));
        const Dag truth = sample_er_dag(d, std::nullopt, cfg.edge_prob, gen_rng);
        const ObservationDataset data =
            sample_data(SemSpec{truth, cfg.mechanism, 1.0}, cfg.n, gen_rng);
        const int budget = std::min(truth.edge_count(), cfg.budget_cap);
        const int horizon = cfg.horizon;

        double incremental_seconds = 0.0;
        double naive_seconds = 0.0;
        bool identical = true;
        for (int rep = 0; rep < cfg.repeats; ++rep) {
            SearchConfig sc;
            sc.sims_multiplier = cfg.sims_multiplier;
            sc.horizon = horizon;
            sc.seed = cfg.seed + static_cast<uint64_t>(rep);

            Env env_inc(EnvConfig{budget, Dag(d)});
            Scorer scorer_inc(data, cfg.kind, cfg.backend);
            const SearchResult inc = run_cduct(env_inc, scorer_inc, sc);
            incremental_seconds += inc.wall_seconds;

            EnvConfig naive_cfg{budget, Dag(d)};
            naive_cfg.tracking = CycleTracking::naive;
            Env env_naive(naive_cfg);
            Scorer scorer_naive(data, cfg.kind, cfg.backend);
            const SearchResult nai = run_cduct(env_naive, scorer_naive, sc);
            naive_seconds += nai.wall_seconds;

            if (inc.best_actions != nai.best_actions || inc.best_reward != nai.best_reward)
                identical = false;
        }
        const double speedup = incremental_seconds > 0 ? naive_seconds / incremental_seconds : 0;
        rows.push_back(json{{"d", d},
                            {"true_edges", truth.edge_count()},
                            {"edge_budget", budget},
                            {"incremental_seconds", incremental_seconds},
                            {"naive_seconds", naive_seconds},
                            {"speedup", speedup},
                            {"outputs_identical", identical}});
        if (!identical)
            throw std::runtime_error(
                "bench_cycle_tracking: incremental and naive variants disagree at d = " +
                std::to_string(d));
    }
    return json{{"version", kReportVersion},
                {"config",
                 {{"d_values", cfg.d_values},
                  {"edge_prob", cfg.edge_prob},
                  {"sims_multiplier", cfg.sims_multiplier},
                  {"repeats", cfg.repeats},
                  {"n", cfg.n},
                  {"budget_cap", cfg.budget_cap},
                  {"seed", cfg.seed}}},
                {"rows", rows}};
}

json sweep(const SweepConfig& cfg) {
    if (cfg.axis != "edge_count" && cfg.axis != "n_datapoints")
        throw std::invalid_argument("sweep: axis must be edge_count or n_datapoints");
    json rows = json::array();
    for (double value : cfg.values) {
        const int edges = cfg.axis == "edge_count" ? static_cast<int>(value) : cfg.base_edge_count;
        const int n = cfg.axis == "n_datapoints" ? static_cast<int>(value) : cfg.base_n;
        Rng gen_rng(cfg.run.seeds.front() * 6364136223846793005ull +
                    static_cast<uint64_t>(value * 1000));
        const Dag truth = sample_er_dag(cfg.d, edges, std::nullopt, gen_rng);
        const ObservationDataset data =
            sample_data(SemSpec{truth, cfg.mechanism, cfg.noise_std}, n, gen_rng);
        for (const auto& method : cfg.methods) {
            RunConfig rc = cfg.run;
            rc.method = method;
            if (rc.edge_budget < 0) rc.edge_budget = truth.edge_count();
            const json report = run_experiment(data, truth, rc);
            for (const auto& row : report["seeds"]) {
                if (row.contains("error")) continue;
                json out{{"axis", cfg.axis},
                         {"value", value},
                         {"method", method},
                         {"seed", row["seed"]},
                         {"reward", row["construct"]["reward"]},
                         {"edge_count", row["construct"]["edge_count"]}};
                if (row["construct"].contains("metrics"))
                    for (const auto& key : {"tpr", "fdr", "shd"})
                        out[key] = row["construct"]["metrics"][key];
                rows.push_back(std::move(out));
            }
        }
    }
    return json{{"version", kReportVersion},
                {"config",
                 {{"axis", cfg.axis},
                  {"values", cfg.values},
                  {"methods", cfg.methods},
                  {"d", cfg.d},
                  {"base_edge_count", cfg.base_edge_count},
                  {"base_n", cfg.base_n},
                  {"mechanism", to_string(cfg.mechanism)},
                  {"noise_std", cfg.noise_std}}},
                {"rows", rows}};
}

std::string sweep_to_csv(const json& sweep_report) {
    std::ostringstream out;
    out << "axis,value,method,seed,reward,edge_count,tpr,fdr,shd\n";
    for (const auto& row : sweep_report.at("rows")) {
        out << row.at("axis").get<std::string>() << ',' << row.at("value").get<double>() << ','
            << row.at("method").get<std::string>() << ',' << row.at("seed").get<uint64_t>() << ','
            << row.at("reward").get<double>() << ',' << row.at("edge_count").get<int>();
        for (const auto& key : {"tpr", "fdr", "shd"}) {
            out << ',';
            if (row.contains(key)) out << row.at(key).get<double>();
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace cdtree
