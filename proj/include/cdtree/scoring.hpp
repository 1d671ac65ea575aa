#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "cdtree/dag.hpp"
#include "cdtree/dataset.hpp"

namespace cdtree {

enum class Backend { linear, quadratic, gaussian_process };
enum class ScoreKind { dv, ev };

Backend backend_from_string(const std::string& s);
ScoreKind score_kind_from_string(const std::string& s);
std::string to_string(Backend b);
std::string to_string(ScoreKind k);

struct GpParams {
    double noise_fraction = 0.1;  // observation noise variance as a fraction of var(y)
    double jitter = 1e-6;
};

// Memoized residual sums keyed by (node, sorted parent set). Entries are
// written once and never invalidated; the cache is tied to one
// (dataset, backend) pair by its owner.
class ScoreCache {
public:
    bool lookup(const std::vector<int>& key, double& out) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(key);
        if (it == map_.end()) {
            ++misses_;
            return false;
        }
        ++hits_;
        out = it->second;
        return true;
    }
    void insert(const std::vector<int>& key, double rss) {
        std::lock_guard<std::mutex> lock(mu_);
        map_.emplace(key, rss);
    }
    int64_t hits() const { return hits_; }
    int64_t misses() const { return misses_; }

private:
    struct KeyHash {
        size_t operator()(const std::vector<int>& v) const {
            size_t h = 0x9e3779b97f4a7c15ull;
            for (int x : v) h = (h ^ static_cast<size_t>(x)) * 0x100000001b3ull;
            return h;
        }
    };
    std::unordered_map<std::vector<int>, double, KeyHash> map_{};
    mutable std::mutex mu_;
    mutable int64_t hits_ = 0;
    mutable int64_t misses_ = 0;
};

// BIC score over DAGs, decomposed into per-node regression residuals.
// Lower score is better; reward() negates it.
class Scorer {
public:
    Scorer(const ObservationDataset& data, ScoreKind kind, Backend backend,
           GpParams gp = GpParams{})
        : data_(&data), kind_(kind), backend_(backend), gp_(gp),
          cache_(std::make_shared<ScoreCache>()) {}

    // Residual sum of squares of regressing `node` on `parents`
    // (intercept-only when the parent set is empty). Cached.
    double node_rss(int node, const std::vector<int>& parents);

    double score(const Dag& dag);
    double reward(const Dag& dag) { return -score(dag); }

    // One-node score term change from adding edge (parent -> node); used by
    // greedy to avoid full rescoring. `total_rss` is needed by the EV kind.
    double score_after_edge(const Dag& dag, double current_score, double current_total_rss,
                            int parent, int node);
    double total_rss(const Dag& dag);

    ScoreKind kind() const { return kind_; }
    Backend backend() const { return backend_; }
    const ObservationDataset& dataset() const { return *data_; }
    ScoreCache& cache() { return *cache_; }

    int64_t score_evaluations() const { return score_calls_; }
    int64_t rss_evaluations() const { return rss_calls_; }
    void count_extra_evaluation() { ++score_calls_; }

private:
    double clamped_log_term(double rss) const;
    double compute_rss(int node, const std::vector<int>& parents) const;

    const ObservationDataset* data_;
    ScoreKind kind_;
    Backend backend_;
    GpParams gp_;
    std::shared_ptr<ScoreCache> cache_;
    int64_t score_calls_ = 0;
    int64_t rss_calls_ = 0;
};

// Degree-<=2 polynomial feature expansion with intercept:
// {1} u {p} u {p*q for p <= q} over the given columns.
Eigen::MatrixXd quadratic_features(const Eigen::MatrixXd& parents);

}  // namespace cdtree
