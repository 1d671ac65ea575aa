#pragma once

#include <limits>
#include <memory>
#include <random>
#include <vector>

#include "cdtree/env.hpp"
#include "cdtree/scoring.hpp"

namespace cdtree {

using Rng = std::mt19937_64;

// Unbiased uniform draw in [0, n); all stochastic choices go through this so
// a run is a deterministic function of the seed.
inline int uniform_index(Rng& rng, int n) {
    const uint64_t bound = std::numeric_limits<uint64_t>::max() -
                           std::numeric_limits<uint64_t>::max() % static_cast<uint64_t>(n);
    uint64_t x;
    do {
        x = rng();
    } while (x >= bound);
    return static_cast<int>(x % static_cast<uint64_t>(n));
}

struct SearchConfig {
    double exploration = 0.05;                       // C_p
    int sims_multiplier = 1000;                      // simulations per real step = sims_multiplier * d
    int horizon = std::numeric_limits<int>::max();   // rollout depth in MDP timesteps
    uint64_t seed = 0;
};

struct SearchResult {
    std::vector<int> best_actions;
    double best_reward = 0.0;
    Dag final_dag{1};
    int64_t score_evaluations = 0;
    double wall_seconds = 0.0;
};

struct TreeNode {
    DagState state;
    TreeNode* parent = nullptr;
    int incoming_action = -1;
    int visits = 0;
    double total_return = 0.0;  // sum of normalized returns
    bool terminal = false;
    std::vector<int> untried;
    std::vector<std::unique_ptr<TreeNode>> children;

    double mean() const { return total_return / visits; }
};

// Exposed for unit testing; run_cduct drives these.
namespace uct {

std::unique_ptr<TreeNode> make_node(const Env& env, DagState state, TreeNode* parent,
                                    int incoming_action);

// Descends by UCB1 through fully expanded nodes, expands one untried action
// (uniformly at random) at the first opportunity, and returns the border
// node together with the actions taken from the root.
std::pair<TreeNode*, std::vector<int>> tree_policy(const Env& env, TreeNode& root,
                                                   double exploration, Rng& rng);

struct RolloutOutcome {
    double reward = 0.0;  // raw terminal-or-truncated reward, -F(G)
    std::vector<int> actions;
    Dag end_dag{1};
};

// Uniform-random rollout from the border state for at most
// min(horizon, 2b - t) MDP steps, stopping early if the action space
// empties; scores the graph reached.
RolloutOutcome sim_policy(const Env& env, const DagState& border, int horizon, Scorer& scorer,
                          Rng& rng);

// Adds the (normalized) return along the border -> root path.
void backup(TreeNode* border, double normalized_return);

// Child with maximal mean return; ties broken by higher visit count, then
// lower action id.
TreeNode* max_child(const TreeNode& node);

}  // namespace uct

SearchResult run_cduct(const Env& env, Scorer& scorer, const SearchConfig& cfg);

// Replays actions through the env from the initial state (test helper and
// result-validation path).
Dag replay_actions(const Env& env, const std::vector<int>& actions);

}  // namespace cdtree
