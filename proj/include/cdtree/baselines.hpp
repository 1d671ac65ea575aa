#pragma once

#include "cdtree/search.hpp"

namespace cdtree {

struct GreedyConfig {
    // Stop when no candidate edge improves the score, in addition to the
    // budget / empty-action-space stops. Off means pure budget exhaustion.
    bool require_improvement = true;
};

// Repeatedly adds the score-minimizing valid edge, using the decomposable
// one-node delta rather than full rescoring. Deterministic; ties go to the
// lexicographically smallest (source, target).
SearchResult greedy_search(const Env& env, Scorer& scorer, GreedyConfig cfg = GreedyConfig{});

// One uniformly random valid trajectory to termination.
SearchResult random_sampling(const Env& env, Scorer& scorer, Rng& rng);

// Best of K = sims_multiplier * d * 2b uniformly random trajectories,
// matching CD-UCT's total per-run simulation count.
SearchResult random_search(const Env& env, Scorer& scorer, int sims_multiplier, Rng& rng);

}  // namespace cdtree
