#pragma once

#include <optional>

#include "cdtree/cycle_set.hpp"
#include "cdtree/dag.hpp"

namespace cdtree {

enum class CycleTracking { incremental, naive };

struct EnvConfig {
    int edge_budget = 0;  // number of edges the episode may add
    Dag initial_dag;
    CycleTracking tracking = CycleTracking::incremental;

    EnvConfig(int budget, Dag initial) : edge_budget(budget), initial_dag(std::move(initial)) {}
};

// MDP state: DAG topology, the edge stub at odd timesteps, the timestep,
// and the cycle-candidate set kept exact for the current topology.
// Plain value type; cloning costs O(d^2 / 64).
struct DagState {
    Dag dag;
    CycleCandidateSet ccs;
    std::optional<int> stub;
    int t = 0;
};

// Two MDP timesteps per edge: an even step picks the source (stub), the
// following odd step picks the target. Transitions are deterministic and
// the action space excludes anything that would close a cycle.
class Env {
public:
    explicit Env(EnvConfig cfg);

    const EnvConfig& config() const { return cfg_; }
    int node_count() const { return cfg_.initial_dag.node_count(); }

    DagState initial_state() const;

    // Even t: sources with at least one valid target left.
    // Odd t: targets l of the stub k with (k, l) neither existing nor
    // forbidden. Ascending node id.
    std::vector<int> valid_actions(const DagState& s) const;
    bool has_valid_action(const DagState& s) const;

    void step_inplace(DagState& s, int action) const;
    DagState step(const DagState& s, int action) const {
        DagState next = s;
        step_inplace(next, action);
        return next;
    }

    bool is_terminal(const DagState& s) const {
        return s.t == 2 * cfg_.edge_budget || !has_valid_action(s);
    }

private:
    // Valid second-step targets for stub k: connectable minus existing
    // edges minus k itself.
    Bitset target_mask(const DagState& s, int k) const;

    EnvConfig cfg_;
};

}  // namespace cdtree
