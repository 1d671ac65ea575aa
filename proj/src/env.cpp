#include "cdtree/env.hpp"

#include <stdexcept>
#include <string>

namespace cdtree {

Env::Env(EnvConfig cfg) : cfg_(std::move(cfg)) {
    const int d = cfg_.initial_dag.node_count();
    if (cfg_.edge_budget < 0) throw std::invalid_argument("Env: negative edge budget");
    if (cfg_.edge_budget + cfg_.initial_dag.edge_count() > d * (d - 1) / 2)
        throw std::invalid_argument("Env: budget exceeds achievable DAG edges");
    if (!cfg_.initial_dag.is_acyclic()) throw std::invalid_argument("Env: initial graph is cyclic");
}

DagState Env::initial_state() const {
    return DagState{cfg_.initial_dag, CycleCandidateSet::init(cfg_.initial_dag), std::nullopt, 0};
}

Bitset Env::target_mask(const DagState& s, int k) const {
    Bitset mask = s.ccs.connectable(k);
    mask.and_not(s.dag.children(k));
    return mask;
}

std::vector<int> Env::valid_actions(const DagState& s) const {
    std::vector<int> actions;
    const int d = s.dag.node_count();
    if (!s.stub) {
        // A source is selectable only if it still has a valid target;
        // this also covers the maximally-connected and all-forbidden cases.
        for (int k = 0; k < d; ++k)
            if (target_mask(s, k).any()) actions.push_back(k);
    } else {
        actions = target_mask(s, *s.stub).to_vector();
    }
    return actions;
}

bool Env::has_valid_action(const DagState& s) const {
    if (s.stub) return target_mask(s, *s.stub).any();
    for (int k = 0; k < s.dag.node_count(); ++k)
        if (target_mask(s, k).any()) return true;
    return false;
}

void Env::step_inplace(DagState& s, int action) const {
    const auto reject = [&](const char* why) {
        throw std::invalid_argument("Env::step: invalid action " + std::to_string(action) +
                                    " at timestep " + std::to_string(s.t) + " (" + why + ")");
    };
    if (action < 0 || action >= s.dag.node_count()) reject("node id out of range");
    if (!s.stub) {
        if (!target_mask(s, action).any()) reject("no valid target from this source");
        s.stub = action;
    } else {
        const int k = *s.stub;
        if (!target_mask(s, k).test(action)) reject("target existing, forbidden, or self");
        s.dag.add_edge(k, action);
        if (cfg_.tracking == CycleTracking::incremental)
            s.ccs.apply_edge(s.dag, k, action);
        else
            s.ccs.refresh_forbidden_naive(s.dag);
        s.stub.reset();
    }
    ++s.t;
}

}  // namespace cdtree
