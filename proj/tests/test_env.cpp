#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cdtree/env.hpp"

using namespace cdtree;

TEST_CASE("valid actions on the empty graph") {
    Env env(EnvConfig{2, Dag(3)});
    const auto s = env.initial_state();
    CHECK(env.valid_actions(s) == std::vector<int>{0, 1, 2});
    CHECK_FALSE(env.is_terminal(s));
}

TEST_CASE("valid actions on a chain") {
    Dag dag(3);
    dag.add_edge(0, 1);
    dag.add_edge(1, 2);
    Env env(EnvConfig{1, dag});
    auto s = env.initial_state();
    // node 2 has an empty connectable set; node 1's only connectable
    // target already has an edge, so picking it would dead-end the episode
    CHECK(env.valid_actions(s) == std::vector<int>{0});
    env.step_inplace(s, 0);
    CHECK(s.stub == 0);
    CHECK(s.t == 1);
    // (0,1) exists, (0,2) is the only valid target
    CHECK(env.valid_actions(s) == std::vector<int>{2});
}

TEST_CASE("step marks then inserts") {
    Env env(EnvConfig{2, Dag(3)});
    auto s = env.initial_state();
    env.step_inplace(s, 0);
    CHECK(s.stub == 0);
    CHECK(s.dag.edge_count() == 0);
    env.step_inplace(s, 1);
    CHECK_FALSE(s.stub.has_value());
    CHECK(s.t == 2);
    CHECK(s.dag.has_edge(0, 1));
    CHECK(s.ccs.is_forbidden(1, 0));
}

TEST_CASE("invalid actions are rejected with context") {
    Env env(EnvConfig{2, Dag(3)});
    auto s = env.initial_state();
    env.step_inplace(s, 0);
    CHECK_THROWS_WITH_AS(env.step_inplace(s, 0), doctest::Contains("timestep 1"),
                         std::invalid_argument);
    CHECK_THROWS_AS(env.step_inplace(s, 7), std::invalid_argument);
}

TEST_CASE("terminal conditions") {
    Env env(EnvConfig{1, Dag(3)});
    auto s = env.initial_state();
    CHECK_FALSE(env.is_terminal(s));
    env.step_inplace(s, 0);
    env.step_inplace(s, 1);
    CHECK(s.t == 2);
    CHECK(env.is_terminal(s));  // t = 2b

    // complete DAG before budget: no valid actions left
    Dag complete(3);
    complete.add_edge(0, 1);
    complete.add_edge(0, 2);
    complete.add_edge(1, 2);
    Env env2(EnvConfig{0, complete});
    CHECK(env2.is_terminal(env2.initial_state()));
}

TEST_CASE("budget validation") {
    CHECK_THROWS_AS(Env(EnvConfig{4, Dag(3)}), std::invalid_argument);
    Dag cyc(3);
    cyc.add_edge(0, 1);
    cyc.add_edge(1, 2);
    cyc.add_edge(2, 0);
    CHECK_THROWS_AS(Env(EnvConfig{0, cyc}), std::invalid_argument);
}

TEST_CASE("stub nodes with no second-step action are filtered out") {
    // 0->1 exists and (1,0) is forbidden; with d = 2 node 0 is maximally
    // connected and node 1 has only forbidden targets.
    Dag dag(2);
    dag.add_edge(0, 1);
    Env env(EnvConfig{0, dag});
    const auto s = env.initial_state();
    CHECK(env.valid_actions(s).empty());
    CHECK(env.is_terminal(s));
}

TEST_CASE("property: random episodes stay acyclic with exact edge counts") {
    std::mt19937_64 rng(7);
    for (int episode = 0; episode < 300; ++episode) {
        const int d = 2 + static_cast<int>(rng() % 9);
        const int max_edges = d * (d - 1) / 2;
        const int budget = static_cast<int>(rng() % (max_edges + 1));
        Env env(EnvConfig{budget, Dag(d)});
        auto s = env.initial_state();
        while (!env.is_terminal(s)) {
            const auto actions = env.valid_actions(s);
            REQUIRE_FALSE(actions.empty());
            env.step_inplace(s, actions[rng() % actions.size()]);
            REQUIRE(s.dag.is_acyclic());
            if (s.t % 2 == 0) REQUIRE(s.dag.edge_count() == s.t / 2);
        }
        // from an empty start the budget is always reachable
        CHECK(s.dag.edge_count() == budget);
    }
}

TEST_CASE("step is deterministic and value-semantic") {
    Env env(EnvConfig{3, Dag(4)});
    const auto s0 = env.initial_state();
    const auto a = env.step(s0, 2);
    const auto b = env.step(s0, 2);
    CHECK(a.dag == b.dag);
    CHECK(a.t == b.t);
    CHECK(a.stub == b.stub);
    CHECK(s0.t == 0);  // original untouched
}
