#include "cdtree/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdtree {

Backend backend_from_string(const std::string& s) {
    if (s == "linear") return Backend::linear;
    if (s == "quadratic") return Backend::quadratic;
    if (s == "gp" || s == "gaussian_process") return Backend::gaussian_process;
    throw std::invalid_argument("unknown regression backend: " + s);
}

ScoreKind score_kind_from_string(const std::string& s) {
    if (s == "dv") return ScoreKind::dv;
    if (s == "ev") return ScoreKind::ev;
    throw std::invalid_argument("unknown score kind: " + s);
}

std::string to_string(Backend b) {
    switch (b) {
        case Backend::linear: return "linear";
        case Backend::quadratic: return "quadratic";
        case Backend::gaussian_process: return "gp";
    }
    return "?";
}

std::string to_string(ScoreKind k) { return k == ScoreKind::dv ? "dv" : "ev"; }

Eigen::MatrixXd quadratic_features(const Eigen::MatrixXd& parents) {
    const int n = static_cast<int>(parents.rows());
    const int k = static_cast<int>(parents.cols());
    Eigen::MatrixXd f(n, 1 + k + k * (k + 1) / 2);
    int col = 0;
    f.col(col++).setOnes();
    for (int p = 0; p < k; ++p) f.col(col++) = parents.col(p);
    for (int p = 0; p < k; ++p)
        for (int q = p; q < k; ++q)
            f.col(col++) = parents.col(p).cwiseProduct(parents.col(q));
    return f;
}

namespace {

double intercept_only_rss(const Eigen::VectorXd& y) {
    const double mean = y.mean();
    return (y.array() - mean).matrix().squaredNorm();
}

// Least squares with minimum-norm solution for rank-deficient designs.
double least_squares_rss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    Eigen::VectorXd beta = X.completeOrthogonalDecomposition().solve(y);
    return (y - X * beta).squaredNorm();
}

double gp_rss(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& y, const GpParams& gp) {
    const int n = static_cast<int>(inputs.rows());
    // Median-heuristic length scale over pairwise parent-input distances.
    std::vector<double> dists;
    dists.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) dists.push_back((inputs.row(a) - inputs.row(b)).norm());
    double ell = 1.0;
    if (!dists.empty()) {
        auto mid = dists.begin() + dists.size() / 2;
        std::nth_element(dists.begin(), mid, dists.end());
        if (*mid > 0) ell = *mid;
    }
    const double inv2ell2 = 1.0 / (2.0 * ell * ell);
    Eigen::MatrixXd K(n, n);
    for (int a = 0; a < n; ++a) {
        K(a, a) = 1.0;
        for (int b = a + 1; b < n; ++b) {
            const double sq = (inputs.row(a) - inputs.row(b)).squaredNorm();
            K(a, b) = K(b, a) = std::exp(-sq * inv2ell2);
        }
    }
    const double var_y = (y.array() - y.mean()).square().sum() / n;
    const double noise = gp.noise_fraction * var_y + gp.jitter;
    Eigen::MatrixXd Kn = K;
    Kn.diagonal().array() += noise;
    Eigen::VectorXd alpha = Kn.llt().solve(y);
    Eigen::VectorXd mean = K * alpha;
    return (y - mean).squaredNorm();
}

}  // namespace

double Scorer::compute_rss(int node, const std::vector<int>& parents) const {
    const Eigen::VectorXd y = data_->data.col(node);
    if (!y.allFinite()) throw std::runtime_error("Scorer: non-finite data in column");
    if (parents.empty()) return intercept_only_rss(y);

    const int n = data_->n();
    Eigen::MatrixXd P(n, static_cast<int>(parents.size()));
    for (size_t c = 0; c < parents.size(); ++c) P.col(static_cast<int>(c)) = data_->data.col(parents[c]);

    switch (backend_) {
        case Backend::linear: {
            Eigen::MatrixXd X(n, P.cols() + 1);
            X.col(0).setOnes();
            X.rightCols(P.cols()) = P;
            return least_squares_rss(X, y);
        }
        case Backend::quadratic:
            return least_squares_rss(quadratic_features(P), y);
        case Backend::gaussian_process:
            return gp_rss(P, y, gp_);
    }
    throw std::logic_error("unreachable backend");
}

double Scorer::node_rss(int node, const std::vector<int>& parents) {
    ++rss_calls_;
    std::vector<int> key;
    key.reserve(parents.size() + 1);
    key.push_back(node);
    key.insert(key.end(), parents.begin(), parents.end());
    std::sort(key.begin() + 1, key.end());
    for (size_t c = 1; c < key.size(); ++c)
        if (key[c] == node || (c + 1 < key.size() && key[c] == key[c + 1]))
            throw std::invalid_argument("Scorer::node_rss: parents must be distinct and exclude the node");

    double rss;
    if (cache_->lookup(key, rss)) return rss;
    rss = compute_rss(node, parents);
    if (!std::isfinite(rss) || rss < 0) throw std::runtime_error("Scorer: non-finite RSS");
    cache_->insert(key, rss);
    return rss;
}

double Scorer::clamped_log_term(double rss) const {
    // Perfect fits would send log(RSS/n) to -inf; keep scores finite.
    const double floor = 1e-8 * data_->n();
    return std::max(rss, floor);
}

double Scorer::score(const Dag& dag) {
    if (dag.node_count() != data_->d())
        throw std::invalid_argument("Scorer::score: node count does not match dataset width");
    ++score_calls_;
    const double n = data_->n();
    const double log_n = std::log(n);
    const int d = data_->d();
    double total = 0.0;
    if (kind_ == ScoreKind::dv) {
        for (int i = 0; i < d; ++i) {
            const double rss = clamped_log_term(node_rss(i, dag.parent_list(i)));
            total += n * std::log(rss / n);
        }
    } else {
        double sum_rss = 0.0;
        for (int i = 0; i < d; ++i) sum_rss += node_rss(i, dag.parent_list(i));
        total = n * d * std::log(clamped_log_term(sum_rss) / (n * d));
    }
    total += dag.edge_count() * log_n;
    if (!std::isfinite(total)) throw std::runtime_error("Scorer::score: non-finite score");
    return total;
}

double Scorer::total_rss(const Dag& dag) {
    double sum = 0.0;
    for (int i = 0; i < dag.node_count(); ++i) sum += node_rss(i, dag.parent_list(i));
    return sum;
}

double Scorer::score_after_edge(const Dag& dag, double current_score, double current_total_rss,
                                int parent, int node) {
    const double n = data_->n();
    const double log_n = std::log(n);
    auto parents = dag.parent_list(node);
    const double rss_old = node_rss(node, parents);
    parents.push_back(parent);
    const double rss_new = node_rss(node, parents);
    if (kind_ == ScoreKind::dv) {
        const double delta = n * (std::log(clamped_log_term(rss_new) / n) -
                                  std::log(clamped_log_term(rss_old) / n));
        return current_score + delta + log_n;
    }
    const double sum_new = current_total_rss - rss_old + rss_new;
    return n * data_->d() * std::log(clamped_log_term(sum_new) / (n * data_->d())) +
           (dag.edge_count() + 1) * log_n;
}

}  // namespace cdtree
