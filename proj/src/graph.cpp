#include "ccn/graph.hpp"

#include <string>

namespace ccn {

Graph::Graph(int n) : n_(n), adj_(n, VertexSet(n)) {
    if (n <= 0) throw InputError("graph needs at least one vertex");
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw InputError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) throw InputError("self-loop rejected at vertex " + std::to_string(u));
    adj_[u].set(v);
    adj_[v].set(u);
}

long long Graph::edge_count() const {
    long long deg_sum = 0;
    for (int v = 0; v < n_; ++v) deg_sum += degree(v);
    return deg_sum / 2;
}

bool Graph::has_any_edge() const {
    for (int v = 0; v < n_; ++v)
        if (!adj_[v].empty()) return true;
    return false;
}

void Graph::check_invariants() const {
    for (int v = 0; v < n_; ++v) {
        if (adj_[v].universe_size() != n_) throw Error("adjacency row has wrong universe");
        if (adj_[v].test(v)) throw Error("self-loop at vertex " + std::to_string(v));
        adj_[v].for_each([&](int u) {
            if (!adj_[u].test(v)) throw Error("asymmetric edge " + std::to_string(v) + "-" + std::to_string(u));
        });
    }
}

Graph gen_gnp(int n, double p, Rng& rng) {
    if (n <= 0) throw InputError("gen_gnp: n must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("gen_gnp: p outside [0,1]");
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

int non_neighbor_count(const Graph& g, int v, const VertexSet& y) {
    if (y.test(v)) throw InputError("non_neighbor_count: v must lie outside y");
    return y.count() - y.intersection_count(g.neighbors(v));
}

VertexSet nonadjacent_to_all(const Graph& g, const VertexSet& s) {
    VertexSet out = VertexSet::full(g.vertex_count());
    s.for_each([&](int v) { out -= g.neighbors(v); });
    out -= s;
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    if (s.empty()) throw InputError("induced_subgraph: empty vertex set");
    std::vector<int> map = s.to_vector();
    std::vector<int> inv(g.vertex_count(), -1);
    for (std::size_t i = 0; i < map.size(); ++i) inv[map[i]] = int(i);
    Graph h(int(map.size()));
    for (std::size_t i = 0; i < map.size(); ++i) {
        VertexSet common = g.neighbors(map[i]) & s;
        common.for_each([&](int u) {
            if (inv[u] > int(i)) h.add_edge(int(i), inv[u]);
        });
    }
    return {std::move(h), std::move(map)};
}

} // namespace ccn
