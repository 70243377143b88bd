#pragma once

#include <cstdint>
#include <vector>

#include "ccn/bitset.hpp"
#include "ccn/common.hpp"
#include "ccn/rng.hpp"

namespace ccn {

// Simple undirected graph on vertices 0..n-1, adjacency stored as one
// VertexSet row per vertex.  No self-loops; rows are kept symmetric by
// construction.
class Graph {
public:
    explicit Graph(int n);

    int vertex_count() const { return n_; }

    void add_edge(int u, int v);
    bool adjacent(int u, int v) const { return adj_[u].test(v); }

    const VertexSet& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return adj_[v].count(); }

    long long edge_count() const;
    bool has_any_edge() const;

    // symmetry, no self-loops, degree/row consistency; cheap enough to run
    // in tests and after deserialization
    void check_invariants() const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    int n_;
    std::vector<VertexSet> adj_;
};

// Erdos-Renyi sample: each unordered pair {u,v}, visited in lexicographic
// order (u < v, inner loop over v), gets an independent coin with
// probability p.  The traversal order is part of the contract: a given
// (n, p, seed) produces the same graph everywhere.
Graph gen_gnp(int n, double p, Rng& rng);

// number of vertices of y that are NOT adjacent to v; v must lie outside y
int non_neighbor_count(const Graph& g, int v, const VertexSet& y);

// vertices adjacent to no member of s (members of s excluded from the result)
VertexSet nonadjacent_to_all(const Graph& g, const VertexSet& s);

struct InducedSubgraph {
    Graph graph;
    std::vector<int> vertex_map; // new index -> original vertex
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

} // namespace ccn
