#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "cdtree/bitset.hpp"

namespace cdtree {

using Edge = std::pair<int, int>;  // (source, target)

// Directed graph over d nodes with per-node child/parent bitsets.
// Intended to stay acyclic: edges are only ever added, and callers are
// expected to gate additions through the cycle-candidate machinery.
class Dag {
public:
    explicit Dag(int node_count)
        : d_(node_count),
          out_(node_count, Bitset(node_count)),
          in_(node_count, Bitset(node_count)) {
        if (node_count < 1) throw std::invalid_argument("Dag: node_count must be >= 1");
    }

    int node_count() const { return d_; }
    int edge_count() const { return m_; }

    bool has_edge(int i, int j) const { return out_[i].test(j); }

    void add_edge(int i, int j) {
        if (i == j) throw std::invalid_argument("Dag::add_edge: self-loop");
        if (i < 0 || i >= d_ || j < 0 || j >= d_)
            throw std::out_of_range("Dag::add_edge: node id out of range");
        if (out_[i].test(j)) throw std::invalid_argument("Dag::add_edge: edge already present");
        out_[i].set(j);
        in_[j].set(i);
        ++m_;
    }

    const Bitset& children(int i) const { return out_[i]; }
    const Bitset& parents(int i) const { return in_[i]; }
    int out_degree(int i) const { return out_[i].count(); }
    std::vector<int> parent_list(int i) const { return in_[i].to_vector(); }

    std::vector<Edge> edge_list() const {
        std::vector<Edge> edges;
        edges.reserve(m_);
        for (int i = 0; i < d_; ++i) out_[i].for_each([&](int j) { edges.emplace_back(i, j); });
        return edges;
    }

    // Kahn's algorithm; also usable as an acyclicity check.
    // Returns empty vector when the graph contains a cycle.
    std::vector<int> topological_order() const {
        std::vector<int> indeg(d_);
        for (int i = 0; i < d_; ++i) indeg[i] = in_[i].count();
        std::vector<int> order;
        order.reserve(d_);
        std::vector<int> frontier;
        for (int i = 0; i < d_; ++i)
            if (indeg[i] == 0) frontier.push_back(i);
        while (!frontier.empty()) {
            int v = frontier.back();
            frontier.pop_back();
            order.push_back(v);
            out_[v].for_each([&](int u) {
                if (--indeg[u] == 0) frontier.push_back(u);
            });
        }
        if (static_cast<int>(order.size()) != d_) order.clear();
        return order;
    }

    bool is_acyclic() const { return m_ == 0 || !topological_order().empty(); }

    // True iff inserting (i, j) would close a directed cycle, i.e. a path
    // j -> ... -> i already exists. Iterative DFS with early exit; this is
    // the per-candidate traversal used by the oracle and the naive tracker.
    bool would_cycle(int i, int j) const {
        if (i == j) return true;
        Bitset seen(d_);
        seen.set(j);
        std::vector<int> stack{j};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (v == i) return true;
            bool hit = false;
            out_[v].for_each([&](int u) {
                if (!seen.test(u)) {
                    seen.set(u);
                    if (u == i) hit = true;
                    stack.push_back(u);
                }
            });
            if (hit) return true;
        }
        return false;
    }

    bool operator==(const Dag& o) const { return d_ == o.d_ && m_ == o.m_ && out_ == o.out_; }

private:
    int d_ = 0;
    int m_ = 0;
    std::vector<Bitset> out_;
    std::vector<Bitset> in_;
};

}  // namespace cdtree
