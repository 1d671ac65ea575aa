#pragma once

#include "cdtree/dag.hpp"
#include "cdtree/scoring.hpp"

namespace cdtree {

struct GraphMetrics {
    double tpr = 0.0;  // |predicted ∩ truth| / |truth|
    double fdr = 0.0;  // reversed edges count as false discoveries
    int shd = 0;       // reversal costs 1
    int true_positives = 0;
    int false_positives = 0;
    int false_negatives = 0;
    int reversed = 0;
};

GraphMetrics compute_metrics(const Dag& predicted, const Dag& truth);

// Refits each node on its parents and drops statistically non-significant
// parent edges: two-sided t-test on the coefficient for the linear backend,
// partial F-test on the parent's feature group for the quadratic backend.
// Only deletes edges, so the result stays acyclic.
Dag prune(const ObservationDataset& data, const Dag& dag, double significance, Backend backend);

}  // namespace cdtree
