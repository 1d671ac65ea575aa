#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdtree/metrics.hpp"
#include "cdtree/synth.hpp"

using namespace cdtree;

TEST_CASE("exact match") {
    Dag truth(3);
    truth.add_edge(0, 1);
    truth.add_edge(1, 2);
    const auto m = compute_metrics(truth, truth);
    CHECK(m.tpr == 1.0);
    CHECK(m.fdr == 0.0);
    CHECK(m.shd == 0);
}

TEST_CASE("single reversed edge") {
    Dag truth(2), pred(2);
    truth.add_edge(0, 1);
    pred.add_edge(1, 0);
    const auto m = compute_metrics(pred, truth);
    CHECK(m.tpr == 0.0);
    CHECK(m.fdr == 1.0);
    CHECK(m.shd == 1);
    CHECK(m.reversed == 1);
}

TEST_CASE("mixed hit, miss and extra") {
    // truth {(0,1),(1,2)} vs predicted {(0,1),(0,2)}:
    // one hit, one miss, one extra -> TPR 1/2, FDR 1/2, SHD 2
    Dag truth(3), pred(3);
    truth.add_edge(0, 1);
    truth.add_edge(1, 2);
    pred.add_edge(0, 1);
    pred.add_edge(0, 2);
    const auto m = compute_metrics(pred, truth);
    CHECK(m.tpr == doctest::Approx(0.5));
    CHECK(m.fdr == doctest::Approx(0.5));
    CHECK(m.shd == 2);
    CHECK(m.true_positives == 1);
    CHECK(m.false_positives == 1);
    CHECK(m.false_negatives == 1);
    CHECK(m.reversed == 0);
}

TEST_CASE("empty prediction and empty truth conventions") {
    Dag truth(3), pred(3);
    truth.add_edge(0, 1);
    SUBCASE("empty prediction has FDR 0") {
        const auto m = compute_metrics(Dag(3), truth);
        CHECK(m.fdr == 0.0);
        CHECK(m.tpr == 0.0);
        CHECK(m.shd == 1);
    }
    SUBCASE("empty truth, empty prediction") {
        const auto m = compute_metrics(Dag(3), Dag(3));
        CHECK(m.tpr == 1.0);
        CHECK(m.fdr == 0.0);
        CHECK(m.shd == 0);
    }
    SUBCASE("empty truth, nonempty prediction") {
        pred.add_edge(0, 2);
        const auto m = compute_metrics(pred, Dag(3));
        CHECK(m.fdr == 1.0);
        CHECK(m.shd == 1);
    }
}

TEST_CASE("node count mismatch is rejected") {
    CHECK_THROWS_AS(compute_metrics(Dag(3), Dag(4)), std::invalid_argument);
}

TEST_CASE("property: SHD identities on random DAG pairs") {
    Rng rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 7);
        const int cap = d * (d - 1) / 2;
        const Dag a = sample_er_dag(d, static_cast<int>(rng() % (cap + 1)), std::nullopt, rng);
        const Dag b = sample_er_dag(d, static_cast<int>(rng() % (cap + 1)), std::nullopt, rng);
        const auto m = compute_metrics(a, b);
        const auto rev = compute_metrics(b, a);
        // SHD is symmetric; a reversal counts once in SHD but shows up in
        // both the false-positive and false-negative tallies
        CHECK(m.shd == rev.shd);
        CHECK(m.shd == m.false_positives + m.false_negatives - m.reversed);
        CHECK(m.true_positives + m.false_negatives ==
              static_cast<int>(b.edge_list().size()));
        CHECK(m.true_positives + m.false_positives ==
              static_cast<int>(a.edge_list().size()));
        CHECK(compute_metrics(a, a).shd == 0);
    }
}

TEST_CASE("prune keeps strong edges and drops spurious ones") {
    Dag truth(3);
    truth.add_edge(0, 1);
    Rng rng(7);
    auto data = sample_data(SemSpec{truth, Mechanism::linear, 0.1}, 500, rng);
    Dag over(3);
    over.add_edge(0, 1);  // real
    over.add_edge(2, 1);  // spurious
    const Dag pruned = prune(data, over, 0.001, Backend::linear);
    CHECK(pruned.has_edge(0, 1));
    CHECK_FALSE(pruned.has_edge(2, 1));
    CHECK(pruned.is_acyclic());
}

TEST_CASE("prune with the quadratic backend uses the parent's feature group") {
    Dag truth(3);
    truth.add_edge(0, 1);
    Rng rng(9);
    auto data = sample_data(SemSpec{truth, Mechanism::quadratic, 0.1}, 500, rng);
    Dag over(3);
    over.add_edge(0, 1);
    over.add_edge(2, 1);
    const Dag pruned = prune(data, over, 0.001, Backend::quadratic);
    CHECK(pruned.has_edge(0, 1));
    CHECK_FALSE(pruned.has_edge(2, 1));
}

TEST_CASE("prune only deletes edges") {
    Rng rng(15);
    const Dag truth = sample_er_dag(6, 8, std::nullopt, rng);
    auto data = sample_data(SemSpec{truth, Mechanism::linear, 1.0}, 300, rng);
    const Dag dag = sample_er_dag(6, 10, std::nullopt, rng);
    const Dag pruned = prune(data, dag, 0.05, Backend::linear);
    for (const auto& [i, j] : pruned.edge_list()) CHECK(dag.has_edge(i, j));
}

TEST_CASE("prune argument validation") {
    Rng rng(1);
    auto data = sample_data(SemSpec{Dag(3), Mechanism::linear, 1.0}, 50, rng);
    CHECK_THROWS_AS(prune(data, Dag(3), 0.0, Backend::linear), std::invalid_argument);
    CHECK_THROWS_AS(prune(data, Dag(3), 1.0, Backend::linear), std::invalid_argument);
    CHECK_THROWS_AS(prune(data, Dag(3), 0.01, Backend::gaussian_process),
                    std::invalid_argument);
    CHECK_THROWS_AS(prune(data, Dag(4), 0.01, Backend::linear), std::invalid_argument);
}
