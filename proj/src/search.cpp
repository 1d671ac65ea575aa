#include "cdtree/search.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace cdtree {
namespace uct {

std::unique_ptr<TreeNode> make_node(const Env& env, DagState state, TreeNode* parent,
                                    int incoming_action) {
    auto node = std::unique_ptr<TreeNode>(new TreeNode{std::move(state), parent, incoming_action});
    node->untried = env.valid_actions(node->state);
    node->terminal = env.is_terminal(node->state);
    return node;
}

std::pair<TreeNode*, std::vector<int>> tree_policy(const Env& env, TreeNode& root,
                                                   double exploration, Rng& rng) {
    TreeNode* node = &root;
    std::vector<int> actions;
    while (!node->terminal) {
        if (!node->untried.empty()) {
            const int pick = uniform_index(rng, static_cast<int>(node->untried.size()));
            const int action = node->untried[pick];
            node->untried.erase(node->untried.begin() + pick);
            node->children.push_back(
                make_node(env, env.step(node->state, action), node, action));
            actions.push_back(action);
            return {node->children.back().get(), std::move(actions)};
        }
        if (node->children.empty()) break;  // terminal-flag safety net
        TreeNode* best = nullptr;
        double best_ucb = -std::numeric_limits<double>::infinity();
        const double log_parent = std::log(static_cast<double>(node->visits));
        for (const auto& child : node->children) {
            const double ucb = child->mean() +
                               2.0 * exploration * std::sqrt(2.0 * log_parent / child->visits);
            if (ucb > best_ucb) {
                best_ucb = ucb;
                best = child.get();
            }
        }
        actions.push_back(best->incoming_action);
        node = best;
    }
    return {node, std::move(actions)};
}

RolloutOutcome sim_policy(const Env& env, const DagState& border, int horizon, Scorer& scorer,
                          Rng& rng) {
    RolloutOutcome out;
    DagState state = border;
    const int64_t remaining = 2LL * env.config().edge_budget - state.t;
    const int64_t steps = std::min<int64_t>(horizon, remaining);
    for (int64_t k = 0; k < steps; ++k) {
        const auto actions = env.valid_actions(state);
        if (actions.empty()) break;
        const int action = actions[uniform_index(rng, static_cast<int>(actions.size()))];
        env.step_inplace(state, action);
        out.actions.push_back(action);
    }
    out.reward = scorer.reward(state.dag);
    out.end_dag = std::move(state.dag);
    return out;
}

void backup(TreeNode* border, double normalized_return) {
    for (TreeNode* node = border; node != nullptr; node = node->parent) {
        ++node->visits;
        node->total_return += normalized_return;
    }
}

TreeNode* max_child(const TreeNode& node) {
    TreeNode* best = nullptr;
    for (const auto& child : node.children) {
        if (child->visits == 0) continue;
        if (!best) {
            best = child.get();
            continue;
        }
        const double m = child->mean();
        const double bm = best->mean();
        if (m > bm ||
            (m == bm && (child->visits > best->visits ||
                         (child->visits == best->visits &&
                          child->incoming_action < best->incoming_action))))
            best = child.get();
    }
    if (!best) throw std::logic_error("max_child: node has no visited children");
    return best;
}

}  // namespace uct

Dag replay_actions(const Env& env, const std::vector<int>& actions) {
    DagState state = env.initial_state();
    for (int a : actions) env.step_inplace(state, a);
    return state.dag;
}

SearchResult run_cduct(const Env& env, Scorer& scorer, const SearchConfig& cfg) {
    if (cfg.sims_multiplier < 1 || cfg.horizon < 1 || cfg.exploration <= 0)
        throw std::invalid_argument("run_cduct: invalid search configuration");
    const auto t_start = std::chrono::steady_clock::now();
    const int64_t evals_before = scorer.score_evaluations();
    const int d = env.node_count();
    const int sims_per_step = cfg.sims_multiplier * d;
    const int64_t full_budget = 2LL * env.config().edge_budget;
    Rng rng(cfg.seed);

    DagState state = env.initial_state();
    std::vector<int> past_actions;
    std::vector<int> best_actions;
    double r_max = -std::numeric_limits<double>::infinity();
    Dag best_dag = state.dag;

    while (!env.is_terminal(state)) {
        auto root = uct::make_node(env, state, nullptr, -1);
        // Running min/max over this root's batch; UCB1 expects returns in
        // [0, 1] and BIC magnitudes are dataset-dependent.
        double batch_min = std::numeric_limits<double>::infinity();
        double batch_max = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < sims_per_step; ++i) {
            auto [border, tree_actions] = uct::tree_policy(env, *root, cfg.exploration, rng);
            auto rollout = uct::sim_policy(env, border->state, cfg.horizon, scorer, rng);
            batch_min = std::min(batch_min, rollout.reward);
            batch_max = std::max(batch_max, rollout.reward);
            const double normalized =
                batch_max > batch_min ? (rollout.reward - batch_min) / (batch_max - batch_min)
                                      : 0.5;
            uct::backup(border, normalized);
            // Only complete trajectories are eligible for memoization.
            if (rollout.reward > r_max &&
                static_cast<int64_t>(state.t) + cfg.horizon >= full_budget) {
                r_max = rollout.reward;
                best_actions = past_actions;
                best_actions.insert(best_actions.end(), tree_actions.begin(), tree_actions.end());
                best_actions.insert(best_actions.end(), rollout.actions.begin(),
                                    rollout.actions.end());
                best_dag = rollout.end_dag;
            }
        }
        TreeNode* chosen = uct::max_child(*root);
        past_actions.push_back(chosen->incoming_action);
        state = std::move(chosen->state);
    }

    if (!std::isfinite(r_max)) {
        // Zero budget or no complete trajectory seen (possible only through
        // early action-space exhaustion); fall back to the advanced state.
        best_actions = past_actions;
        best_dag = state.dag;
        r_max = scorer.reward(best_dag);
    }

    SearchResult result;
    result.best_actions = std::move(best_actions);
    result.best_reward = r_max;
    result.final_dag = std::move(best_dag);
    result.score_evaluations = scorer.score_evaluations() - evals_before;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

}  // namespace cdtree
