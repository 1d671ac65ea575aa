#include "cdtree/synth.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cdtree {

Mechanism mechanism_from_string(const std::string& s) {
    if (s == "linear") return Mechanism::linear;
    if (s == "quadratic") return Mechanism::quadratic;
    if (s == "gp" || s == "gp_sample") return Mechanism::gp_sample;
    throw std::invalid_argument("unknown mechanism: " + s);
}

std::string to_string(Mechanism m) {
    switch (m) {
        case Mechanism::linear: return "linear";
        case Mechanism::quadratic: return "quadratic";
        case Mechanism::gp_sample: return "gp";
    }
    return "?";
}

Dag sample_er_dag(int d, std::optional<int> edge_count, std::optional<double> edge_prob,
                  Rng& rng) {
    if (edge_count.has_value() == edge_prob.has_value())
        throw std::invalid_argument("sample_er_dag: give exactly one of edge_count / edge_prob");
    const int max_edges = d * (d - 1) / 2;
    if (edge_count && (*edge_count < 0 || *edge_count > max_edges))
        throw std::invalid_argument("sample_er_dag: edge_count out of range");
    if (edge_prob && (*edge_prob < 0.0 || *edge_prob > 1.0))
        throw std::invalid_argument("sample_er_dag: edge_prob out of range");

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    for (int i = d - 1; i > 0; --i) std::swap(order[i], order[uniform_index(rng, i + 1)]);

    Dag dag(d);
    if (edge_prob) {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                if (unif(rng) < *edge_prob) dag.add_edge(order[a], order[b]);
    } else {
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(max_edges);
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b) pairs.emplace_back(a, b);
        // Partial Fisher-Yates: first edge_count entries are a uniform
        // sample without replacement.
        for (int k = 0; k < *edge_count; ++k) {
            const int pick = k + uniform_index(rng, static_cast<int>(pairs.size()) - k);
            std::swap(pairs[k], pairs[pick]);
            dag.add_edge(order[pairs[k].first], order[pairs[k].second]);
        }
    }
    return dag;
}

namespace {

double signed_weight(Rng& rng) {
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    const double w = mag(rng);
    return (rng() & 1) ? w : -w;
}

// Zero-mean GP draw with unit RBF kernel over the parent inputs. Exact
// Cholesky up to n = 2000; random Fourier features beyond that.
Eigen::VectorXd gp_draw(const Eigen::MatrixXd& inputs, Rng& rng) {
    const int n = static_cast<int>(inputs.rows());
    std::normal_distribution<double> gauss(0.0, 1.0);
    if (n <= 2000) {
        Eigen::MatrixXd K(n, n);
        for (int a = 0; a < n; ++a) {
            K(a, a) = 1.0 + 1e-6;
            for (int b = a + 1; b < n; ++b) {
                const double sq = (inputs.row(a) - inputs.row(b)).squaredNorm();
                K(a, b) = K(b, a) = std::exp(-0.5 * sq);
            }
        }
        Eigen::MatrixXd L = K.llt().matrixL();
        Eigen::VectorXd z(n);
        for (int a = 0; a < n; ++a) z(a) = gauss(rng);
        return L * z;
    }
    const int features = 256;
    const int k = static_cast<int>(inputs.cols());
    Eigen::MatrixXd omega(k, features);
    Eigen::VectorXd phase(features), weight(features);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
    for (int c = 0; c < features; ++c) {
        for (int r = 0; r < k; ++r) omega(r, c) = gauss(rng);
        phase(c) = unif(rng);
        weight(c) = gauss(rng);
    }
    Eigen::MatrixXd proj = inputs * omega;
    proj.rowwise() += phase.transpose();
    return std::sqrt(2.0 / features) * (proj.array().cos().matrix() * weight);
}

}  // namespace

ObservationDataset sample_data(const SemSpec& spec, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_data: n must be >= 1");
    if (!spec.dag.is_acyclic()) throw std::invalid_argument("sample_data: dag is cyclic");
    if (spec.noise_std <= 0) throw std::invalid_argument("sample_data: noise_std must be > 0");
    const int d = spec.dag.node_count();
    std::normal_distribution<double> gauss(0.0, 1.0);

    ObservationDataset out;
    out.data = Eigen::MatrixXd::Zero(n, d);
    out.names.reserve(d);
    for (int j = 0; j < d; ++j) out.names.push_back("x" + std::to_string(j));

    for (int node : spec.dag.topological_order()) {
        const auto parents = spec.dag.parent_list(node);
        Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
        if (!parents.empty()) {
            Eigen::MatrixXd P(n, static_cast<int>(parents.size()));
            for (size_t c = 0; c < parents.size(); ++c)
                P.col(static_cast<int>(c)) = out.data.col(parents[c]);
            switch (spec.mechanism) {
                case Mechanism::linear:
                    for (int c = 0; c < P.cols(); ++c) f += signed_weight(rng) * P.col(c);
                    break;
                case Mechanism::quadratic: {
                    Eigen::MatrixXd feats = quadratic_features(P);
                    for (int c = 1; c < feats.cols(); ++c) f += signed_weight(rng) * feats.col(c);
                    break;
                }
                case Mechanism::gp_sample:
                    f = gp_draw(P, rng);
                    break;
            }
            const double sd = std::sqrt((f.array() - f.mean()).square().sum() / n);
            if (sd > 0) f /= sd;
        }
        for (int r = 0; r < n; ++r) out.data(r, node) = f(r) + spec.noise_std * gauss(rng);
    }
    return out;
}

}  // namespace cdtree
