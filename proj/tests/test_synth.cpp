#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdtree/synth.hpp"

using namespace cdtree;

TEST_CASE("sample_er_dag with an exact edge count") {
    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 3 + static_cast<int>(rng() % 10);
        const int max_edges = d * (d - 1) / 2;
        const int m = static_cast<int>(rng() % (max_edges + 1));
        const Dag dag = sample_er_dag(d, m, std::nullopt, rng);
        CHECK(dag.node_count() == d);
        CHECK(dag.edge_count() == m);
        CHECK(dag.is_acyclic());
    }
}

TEST_CASE("sample_er_dag with an edge probability") {
    Rng rng(2);
    SUBCASE("p = 0 gives the empty graph") {
        CHECK(sample_er_dag(8, std::nullopt, 0.0, rng).edge_count() == 0);
    }
    SUBCASE("p = 1 gives a complete DAG") {
        const Dag dag = sample_er_dag(8, std::nullopt, 1.0, rng);
        CHECK(dag.edge_count() == 8 * 7 / 2);
        CHECK(dag.is_acyclic());
    }
    SUBCASE("intermediate p lands near the expectation") {
        // 45 candidate pairs at p = 0.4: mean 18, sd ~3.3; average over
        // 200 draws has sd ~0.23, so a +-1 band is ~4 sigma
        double total = 0.0;
        for (int i = 0; i < 200; ++i)
            total += sample_er_dag(10, std::nullopt, 0.4, rng).edge_count();
        CHECK(total / 200.0 == doctest::Approx(18.0).epsilon(0.06));
    }
}

TEST_CASE("sample_er_dag argument validation") {
    Rng rng(3);
    CHECK_THROWS_AS(sample_er_dag(5, std::nullopt, std::nullopt, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_er_dag(5, 3, 0.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_er_dag(5, 11, std::nullopt, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_er_dag(5, std::nullopt, 1.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_er_dag(0, 0, std::nullopt, rng), std::invalid_argument);
}

TEST_CASE("sample_er_dag is seed-reproducible") {
    Rng a(99), b(99);
    const Dag x = sample_er_dag(12, 20, std::nullopt, a);
    const Dag y = sample_er_dag(12, 20, std::nullopt, b);
    CHECK(x == y);
}

TEST_CASE("sample_data shape and reproducibility") {
    Rng gen(5);
    const Dag truth = sample_er_dag(6, 8, std::nullopt, gen);
    Rng a(7), b(7);
    const auto x = sample_data(SemSpec{truth, Mechanism::quadratic, 0.5}, 40, a);
    const auto y = sample_data(SemSpec{truth, Mechanism::quadratic, 0.5}, 40, b);
    CHECK(x.n() == 40);
    CHECK(x.d() == 6);
    CHECK(x.data == y.data);
    CHECK(x.names.size() == 6);
}

TEST_CASE("sample_data argument validation") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_data(SemSpec{Dag(3), Mechanism::linear, 0.0}, 10, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_data(SemSpec{Dag(3), Mechanism::linear, 1.0}, 0, rng),
                    std::invalid_argument);
}

TEST_CASE("linear mechanism makes children affine in their parents") {
    // chain 0 -> 1 with near-zero noise: column 1 must be (up to the unit-sd
    // rescale) a multiple of column 0 with |slope| in a sane range
    Dag truth(2);
    truth.add_edge(0, 1);
    Rng rng(13);
    const auto data = sample_data(SemSpec{truth, Mechanism::linear, 1e-9}, 200, rng);
    const Eigen::VectorXd x = data.data.col(0);
    const Eigen::VectorXd y = data.data.col(1);
    const double slope = (x.dot(y) - x.sum() * y.sum() / 200.0) /
                         (x.dot(x) - x.sum() * x.sum() / 200.0);
    const Eigen::VectorXd resid =
        y - slope * x - Eigen::VectorXd::Constant(200, (y.sum() - slope * x.sum()) / 200.0);
    CHECK(resid.norm() < 1e-6 * y.norm());
}

TEST_CASE("root nodes are pure noise with the requested scale") {
    Rng rng(17);
    const auto data = sample_data(SemSpec{Dag(3), Mechanism::gp_sample, 2.0}, 5000, rng);
    for (int j = 0; j < 3; ++j) {
        const Eigen::VectorXd col = data.data.col(j);
        const double mean = col.mean();
        const double var = (col.array() - mean).square().sum() / 5000.0;
        CHECK(std::sqrt(var) == doctest::Approx(2.0).epsilon(0.1));
    }
}

TEST_CASE("nonlinear chains stay numerically bounded") {
    // without the pre-noise rescale a 12-deep quadratic chain overflows
    Dag truth(12);
    for (int i = 0; i + 1 < 12; ++i) truth.add_edge(i, i + 1);
    Rng rng(23);
    for (Mechanism m : {Mechanism::quadratic, Mechanism::gp_sample}) {
        const auto data = sample_data(SemSpec{truth, m, 0.5}, 100, rng);
        CHECK(data.data.allFinite());
        CHECK(data.data.cwiseAbs().maxCoeff() < 1e3);
    }
}

TEST_CASE("mechanism string round trip") {
    for (Mechanism m : {Mechanism::linear, Mechanism::quadratic, Mechanism::gp_sample})
        CHECK(mechanism_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(mechanism_from_string("cubic"), std::invalid_argument);
}
