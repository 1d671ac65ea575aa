#pragma once

#include <optional>
#include <set>

#include "cdtree/dag.hpp"

namespace cdtree {

// Tracks the set of candidate (non-)edges whose insertion would close a
// directed cycle, maintained incrementally as edges are added. Also keeps
// the closed descendant/ancestor reachability set of every node, so that
// after inserting (i, j) the newly forbidden pairs are exactly
// De(j) x An(i) minus existing edges, with no graph traversal.
class CycleCandidateSet {
public:
    // Exact set for `dag`. For a graph with no edges and a supplied
    // first_edge (i, j), the result describes the graph after inserting
    // that edge: forbidden = {(j, i)}. Otherwise forbidden is computed by
    // per-candidate traversal and reachability by per-node traversal.
    static CycleCandidateSet init(const Dag& dag, std::optional<Edge> first_edge = std::nullopt);

    // Incremental update after inserting (i, j). `dag_after` must already
    // contain the edge, and (i, j) must not have been forbidden.
    void apply_edge(const Dag& dag_after, int i, int j);

    // Recomputes only the forbidden rows by per-candidate traversal;
    // reachability sets are left untouched. This is the naive variant
    // used for benchmarking against the incremental update.
    void refresh_forbidden_naive(const Dag& dag);

    bool is_forbidden(int i, int j) const { return forbidden_[i].test(j); }
    const Bitset& forbidden_from(int i) const { return forbidden_[i]; }
    const Bitset& descendants(int v) const { return desc_[v]; }
    const Bitset& ancestors(int v) const { return anc_[v]; }
    int node_count() const { return static_cast<int>(forbidden_.size()); }

    // Connectable targets K(i): all j != i with (i, j) not forbidden.
    // Existing edges are not excluded here; the action space handles them.
    Bitset connectable(int i) const {
        Bitset k(node_count());
        for (int j = 0; j < node_count(); ++j)
            if (j != i) k.set(j);
        k.and_not(forbidden_[i]);
        return k;
    }

    std::set<Edge> forbidden_pairs() const {
        std::set<Edge> out;
        for (int i = 0; i < node_count(); ++i)
            forbidden_[i].for_each([&](int j) { out.emplace(i, j); });
        return out;
    }

private:
    explicit CycleCandidateSet(int d)
        : forbidden_(d, Bitset(d)), desc_(d, Bitset(d)), anc_(d, Bitset(d)) {}

    std::vector<Bitset> forbidden_;
    std::vector<Bitset> desc_;
    std::vector<Bitset> anc_;
};

// Reference implementation: every non-edge (x, y) whose insertion makes the
// graph cyclic, decided by one traversal per candidate. Testing and
// non-empty-graph initialization only.
std::set<Edge> cycle_set_oracle(const Dag& dag);

}  // namespace cdtree
