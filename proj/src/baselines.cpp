#include "cdtree/baselines.hpp"

#include <chrono>

namespace cdtree {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

SearchResult finish(const Env& env, Scorer& scorer, std::vector<int> actions, Dag dag,
                    double reward, int64_t evals_before, const Timer& timer) {
    SearchResult result;
    result.best_actions = std::move(actions);
    result.best_reward = reward;
    result.final_dag = std::move(dag);
    result.score_evaluations = scorer.score_evaluations() - evals_before;
    result.wall_seconds = timer.seconds();
    (void)env;
    return result;
}

}  // namespace

SearchResult greedy_search(const Env& env, Scorer& scorer, GreedyConfig cfg) {
    Timer timer;
    const int64_t evals_before = scorer.score_evaluations();
    DagState state = env.initial_state();
    std::vector<int> actions;
    double current_score = scorer.score(state.dag);
    double current_total_rss =
        scorer.kind() == ScoreKind::ev ? scorer.total_rss(state.dag) : 0.0;

    while (!env.is_terminal(state)) {
        int best_i = -1, best_j = -1;
        double best_score = std::numeric_limits<double>::infinity();
        for (int i : env.valid_actions(state)) {
            Bitset targets = state.ccs.connectable(i);
            targets.and_not(state.dag.children(i));
            targets.for_each([&](int j) {
                // One regression per candidate; each counts as a score
                // function evaluation for budget accounting.
                const double s =
                    scorer.score_after_edge(state.dag, current_score, current_total_rss, i, j);
                scorer.count_extra_evaluation();
                if (s < best_score) {
                    best_score = s;
                    best_i = i;
                    best_j = j;
                }
            });
        }
        if (best_i < 0) break;
        if (cfg.require_improvement && best_score >= current_score) break;
        if (scorer.kind() == ScoreKind::ev) {
            const double rss_old = scorer.node_rss(best_j, state.dag.parent_list(best_j));
            auto parents = state.dag.parent_list(best_j);
            parents.push_back(best_i);
            current_total_rss += scorer.node_rss(best_j, parents) - rss_old;
        }
        env.step_inplace(state, best_i);
        env.step_inplace(state, best_j);
        actions.push_back(best_i);
        actions.push_back(best_j);
        current_score = best_score;
    }
    const double reward = scorer.reward(state.dag);
    return finish(env, scorer, std::move(actions), std::move(state.dag), reward, evals_before,
                  timer);
}

SearchResult random_sampling(const Env& env, Scorer& scorer, Rng& rng) {
    Timer timer;
    const int64_t evals_before = scorer.score_evaluations();
    DagState state = env.initial_state();
    std::vector<int> actions;
    while (!env.is_terminal(state)) {
        const auto valid = env.valid_actions(state);
        const int action = valid[uniform_index(rng, static_cast<int>(valid.size()))];
        env.step_inplace(state, action);
        actions.push_back(action);
    }
    const double reward = scorer.reward(state.dag);
    return finish(env, scorer, std::move(actions), std::move(state.dag), reward, evals_before,
                  timer);
}

SearchResult random_search(const Env& env, Scorer& scorer, int sims_multiplier, Rng& rng) {
    Timer timer;
    const int64_t evals_before = scorer.score_evaluations();
    const int64_t trajectories = static_cast<int64_t>(sims_multiplier) * env.node_count() *
                                 2LL * env.config().edge_budget;
    SearchResult best = random_sampling(env, scorer, rng);
    for (int64_t k = 1; k < trajectories; ++k) {
        SearchResult candidate = random_sampling(env, scorer, rng);
        if (candidate.best_reward > best.best_reward) best = std::move(candidate);
    }
    best.score_evaluations = scorer.score_evaluations() - evals_before;
    best.wall_seconds = timer.seconds();
    return best;
}

}  // namespace cdtree
