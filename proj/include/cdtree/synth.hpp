#pragma once

#include <optional>
#include <string>

#include "cdtree/dag.hpp"
#include "cdtree/dataset.hpp"
#include "cdtree/search.hpp"

namespace cdtree {

enum class Mechanism { linear, quadratic, gp_sample };

Mechanism mechanism_from_string(const std::string& s);
std::string to_string(Mechanism m);

struct SemSpec {
    Dag dag;
    Mechanism mechanism = Mechanism::linear;
    double noise_std = 1.0;
};

// Erdos-Renyi DAG: a uniformly random permutation fixes the topological
// order; exactly one of edge_count / edge_prob selects the order-respecting
// pairs (exact count without replacement, or independent inclusion).
Dag sample_er_dag(int d, std::optional<int> edge_count, std::optional<double> edge_prob,
                  Rng& rng);

// Samples n observations from the SEM in topological order. Non-root
// mechanism outputs are rescaled to unit empirical variance before noise is
// added, which keeps deep quadratic/GP chains numerically bounded.
ObservationDataset sample_data(const SemSpec& spec, int n, Rng& rng);

}  // namespace cdtree
