#include "cdtree/cycle_set.hpp"

#include <stdexcept>

namespace cdtree {

std::set<Edge> cycle_set_oracle(const Dag& dag) {
    if (!dag.is_acyclic()) throw std::invalid_argument("cycle_set_oracle: input graph is cyclic");
    std::set<Edge> out;
    const int d = dag.node_count();
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            if (x == y || dag.has_edge(x, y)) continue;
            if (dag.would_cycle(x, y)) out.emplace(x, y);
        }
    return out;
}

CycleCandidateSet CycleCandidateSet::init(const Dag& dag, std::optional<Edge> first_edge) {
    if (!dag.is_acyclic())
        throw std::invalid_argument("CycleCandidateSet::init: input graph is cyclic");
    const int d = dag.node_count();
    CycleCandidateSet ccs(d);
    for (int v = 0; v < d; ++v) {
        ccs.desc_[v].set(v);
        ccs.anc_[v].set(v);
    }
    if (dag.edge_count() == 0) {
        if (first_edge) {
            auto [i, j] = *first_edge;
            if (i == j || i < 0 || i >= d || j < 0 || j >= d)
                throw std::invalid_argument("CycleCandidateSet::init: bad first_edge");
            // Empty-graph branch: only the reversed pair is invalid, and
            // reachability reflects the single inserted edge.
            ccs.forbidden_[j].set(i);
            ccs.desc_[i].set(j);
            ccs.anc_[j].set(i);
        }
        return ccs;
    }
    // Non-empty start: reachability by per-node DFS, forbidden by oracle.
    for (int v = 0; v < d; ++v) {
        std::vector<int> stack{v};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            dag.children(u).for_each([&](int w) {
                if (!ccs.desc_[v].test(w)) {
                    ccs.desc_[v].set(w);
                    stack.push_back(w);
                }
            });
        }
    }
    for (int v = 0; v < d; ++v)
        ccs.desc_[v].for_each([&](int u) { ccs.anc_[u].set(v); });
    for (const auto& [x, y] : cycle_set_oracle(dag)) ccs.forbidden_[x].set(y);
    return ccs;
}

void CycleCandidateSet::apply_edge(const Dag& dag_after, int i, int j) {
    // De(j) and An(i) are unchanged by the insertion itself (j cannot reach
    // i in an acyclic graph containing i -> j), so the pre-update copies are
    // the post-insertion sets the update rule calls for.
    const Bitset dj = desc_[j];
    const Bitset ai = anc_[i];
    ai.for_each([&](int x) { desc_[x] |= dj; });
    dj.for_each([&](int y) { anc_[y] |= ai; });
    dj.for_each([&](int x) {
        Bitset add = ai;
        add.and_not(dag_after.children(x));
        forbidden_[x] |= add;
    });
}

void CycleCandidateSet::refresh_forbidden_naive(const Dag& dag) {
    const int d = node_count();
    for (int x = 0; x < d; ++x) {
        forbidden_[x].clear();
        for (int y = 0; y < d; ++y) {
            if (x == y || dag.has_edge(x, y)) continue;
            if (dag.would_cycle(x, y)) forbidden_[x].set(y);
        }
    }
}

}  // namespace cdtree
