#include "cdtree/metrics.hpp"

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <stdexcept>

namespace cdtree {

GraphMetrics compute_metrics(const Dag& predicted, const Dag& truth) {
    if (predicted.node_count() != truth.node_count())
        throw std::invalid_argument("compute_metrics: node counts differ");
    const int d = truth.node_count();
    GraphMetrics m;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            // Per unordered pair: 0 = none, 1 = i->j, 2 = j->i. DAGs never
            // hold both directions.
            const int p = predicted.has_edge(i, j) ? 1 : predicted.has_edge(j, i) ? 2 : 0;
            const int t = truth.has_edge(i, j) ? 1 : truth.has_edge(j, i) ? 2 : 0;
            if (p == t) {
                if (t != 0) ++m.true_positives;
                continue;
            }
            ++m.shd;  // one addition, deletion, or reversal
            if (p != 0 && t != 0) {
                ++m.reversed;
                ++m.false_positives;
                ++m.false_negatives;
            } else if (p != 0) {
                ++m.false_positives;
            } else {
                ++m.false_negatives;
            }
        }
    m.tpr = truth.edge_count() > 0
                ? static_cast<double>(m.true_positives) / truth.edge_count()
                : (predicted.edge_count() == 0 ? 1.0 : 0.0);
    m.fdr = predicted.edge_count() > 0
                ? static_cast<double>(m.false_positives) / predicted.edge_count()
                : 0.0;
    return m;
}

namespace {

// Parents whose coefficient passes a two-sided t-test at `significance`.
std::vector<int> significant_linear(const ObservationDataset& data, int node,
                                    const std::vector<int>& parents, double significance) {
    const int n = data.n();
    const int p = static_cast<int>(parents.size()) + 1;
    const int dof = n - p;
    if (dof < 1) return parents;  // not enough data to test anything
    Eigen::MatrixXd X(n, p);
    X.col(0).setOnes();
    for (size_t c = 0; c < parents.size(); ++c)
        X.col(static_cast<int>(c) + 1) = data.data.col(parents[c]);
    Eigen::VectorXd y = data.data.col(node);
    Eigen::MatrixXd xtx = X.transpose() * X;
    Eigen::MatrixXd xtx_inv = xtx.completeOrthogonalDecomposition().pseudoInverse();
    Eigen::VectorXd beta = xtx_inv * (X.transpose() * y);
    const double rss = (y - X * beta).squaredNorm();
    const double sigma2 = rss / dof;
    const boost::math::students_t dist(dof);
    std::vector<int> kept;
    for (size_t c = 0; c < parents.size(); ++c) {
        const int k = static_cast<int>(c) + 1;
        const double se = std::sqrt(std::max(sigma2 * xtx_inv(k, k), 0.0));
        double pval;
        if (se == 0.0) {
            pval = std::abs(beta(k)) > 1e-12 ? 0.0 : 1.0;
        } else {
            const double t = std::abs(beta(k) / se);
            pval = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
        }
        if (pval <= significance) kept.push_back(parents[c]);
    }
    return kept;
}

double quadratic_rss(const ObservationDataset& data, int node, const std::vector<int>& parents) {
    const int n = data.n();
    Eigen::VectorXd y = data.data.col(node);
    if (parents.empty()) {
        const double mean = y.mean();
        return (y.array() - mean).matrix().squaredNorm();
    }
    Eigen::MatrixXd P(n, static_cast<int>(parents.size()));
    for (size_t c = 0; c < parents.size(); ++c)
        P.col(static_cast<int>(c)) = data.data.col(parents[c]);
    Eigen::MatrixXd X = quadratic_features(P);
    Eigen::VectorXd beta = X.completeOrthogonalDecomposition().solve(y);
    return (y - X * beta).squaredNorm();
}

// Parents whose removal significantly increases RSS under a partial F-test.
std::vector<int> significant_quadratic(const ObservationDataset& data, int node,
                                       const std::vector<int>& parents, double significance) {
    const int n = data.n();
    const int k = static_cast<int>(parents.size());
    const int p_full = 1 + k + k * (k + 1) / 2;
    const int dof = n - p_full;
    if (dof < 1) return parents;
    const double rss_full = quadratic_rss(data, node, parents);
    std::vector<int> kept;
    for (int c = 0; c < k; ++c) {
        std::vector<int> reduced;
        for (int o = 0; o < k; ++o)
            if (o != c) reduced.push_back(parents[o]);
        const int k_r = k - 1;
        const int q = p_full - (1 + k_r + k_r * (k_r + 1) / 2);
        const double rss_reduced = quadratic_rss(data, node, reduced);
        double pval;
        if (rss_full <= 0.0) {
            pval = rss_reduced > 1e-12 ? 0.0 : 1.0;
        } else {
            const double f = ((rss_reduced - rss_full) / q) / (rss_full / dof);
            pval = f <= 0.0 ? 1.0
                            : boost::math::cdf(
                                  boost::math::complement(boost::math::fisher_f(q, dof), f));
        }
        if (pval <= significance) kept.push_back(parents[c]);
    }
    return kept;
}

}  // namespace

Dag prune(const ObservationDataset& data, const Dag& dag, double significance, Backend backend) {
    if (significance <= 0.0 || significance >= 1.0)
        throw std::invalid_argument("prune: significance must be in (0, 1)");
    if (backend == Backend::gaussian_process)
        throw std::invalid_argument("prune: supported backends are linear and quadratic");
    if (dag.node_count() != data.d())
        throw std::invalid_argument("prune: graph and dataset dimensions differ");
    Dag pruned(dag.node_count());
    for (int node = 0; node < dag.node_count(); ++node) {
        const auto parents = dag.parent_list(node);
        if (parents.empty()) continue;
        const auto kept = backend == Backend::linear
                              ? significant_linear(data, node, parents, significance)
                              : significant_quadratic(data, node, parents, significance);
        for (int p : kept) pruned.add_edge(p, node);
    }
    return pruned;
}

}  // namespace cdtree
