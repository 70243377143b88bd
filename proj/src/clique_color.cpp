#include "ccn/clique_color.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <string>

namespace ccn {

void Coloring::validate(int n) const {
    if (int(color.size()) != n)
        throw InputError("coloring covers " + std::to_string(color.size()) + " vertices, graph has " +
                         std::to_string(n));
    if (num_colors <= 0) throw InputError("coloring needs at least one color");
    for (int c : color)
        if (c < 0 || c >= num_colors) throw InputError("color id out of range: " + std::to_string(c));
}

void Coloring::compact() {
    std::vector<int> remap(num_colors, -1);
    int next = 0;
    for (int& c : color) {
        if (remap[c] < 0) remap[c] = next++;
        c = remap[c];
    }
    num_colors = next;
}

std::vector<VertexSet> Coloring::class_sets(int n) const {
    std::vector<VertexSet> out(num_colors, VertexSet(n));
    for (int v = 0; v < n; ++v) out[color[v]].set(v);
    return out;
}

int Coloring::nonempty_classes() const {
    std::vector<char> seen(num_colors, 0);
    int k = 0;
    for (int c : color)
        if (!seen[c]) {
            seen[c] = 1;
            ++k;
        }
    return k;
}

void write_coloring(const Coloring& c, std::ostream& out) {
    out << "k=" << c.num_colors << "\n";
    for (int v : c.color) out << v << "\n";
}

Coloring read_coloring(std::istream& in) {
    std::string line;
    Coloring c;
    bool have_header = false;
    while (std::getline(in, line)) {
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos || line[i] == '#') continue;
        if (!have_header) {
            if (line.compare(i, 2, "k=") != 0) throw InputError("coloring file: missing k= header");
            c.num_colors = int(std::stol(line.substr(i + 2)));
            have_header = true;
        } else {
            c.color.push_back(int(std::stol(line.substr(i))));
        }
    }
    if (!have_header) throw InputError("coloring file: empty");
    return c;
}

Coloring read_coloring_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open coloring file: " + path);
    return read_coloring(in);
}

void write_coloring_file(const Coloring& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write coloring file: " + path);
    write_coloring(c, out);
}

Verdict verify_coloring(const Graph& g, const Coloring& c, std::uint64_t clique_cap) {
    int n = g.vertex_count();
    c.validate(n);
    for (const VertexSet& cls : c.class_sets(n)) {
        if (cls.count() < 2) continue;
        InducedSubgraph sub = induced_subgraph(g, cls);
        CliqueStream stream(sub.graph, 2, clique_cap);
        while (auto k = stream.next()) {
            VertexSet orig(n);
            k->for_each([&](int i) { orig.set(sub.vertex_map[i]); });
            VertexSet cand = VertexSet::full(n) - orig;
            orig.for_each([&](int u) { cand &= g.neighbors(u); });
            if (cand.empty()) return {false, std::move(orig)};
        }
        if (stream.truncated())
            throw BudgetExceeded("verify_coloring: clique cap hit before the class was cleared");
    }
    return {true, std::nullopt};
}

namespace {

struct HEdge {
    std::vector<int> vs;
    int uncolored = 0;
    bool mono = true;
    int mono_color = -1; // color shared by every colored member, -1 while none colored
};

struct WeakColorer {
    int n, k;
    std::vector<HEdge> edges;
    std::vector<std::vector<int>> incident;
    std::vector<int> color;
    std::vector<std::uint64_t> forbid;
    std::vector<std::uint64_t> seen; // branching heuristic only
    const std::vector<int>& degree;
    long long nodes = 0, max_nodes;
    int assigned = 0, max_used = -1;

    struct EdgeSave {
        int idx;
        bool mono;
        int mono_color;
    };
    std::vector<EdgeSave> edge_trail;
    std::vector<std::pair<int, int>> forbid_trail; // (vertex, color)
    std::vector<std::pair<int, int>> seen_trail;

    WeakColorer(int n_, const std::vector<std::vector<int>>& hyper, int k_,
                const std::vector<int>& deg, long long cap)
        : n(n_), k(k_), incident(n_), color(n_, -1), forbid(n_, 0), seen(n_, 0), degree(deg),
          max_nodes(cap) {
        edges.reserve(hyper.size());
        for (const auto& e : hyper) {
            HEdge he;
            he.vs = e;
            he.uncolored = int(e.size());
            edges.push_back(std::move(he));
        }
        for (std::size_t i = 0; i < edges.size(); ++i)
            for (int v : edges[i].vs) incident[v].push_back(int(i));
    }

    bool try_assign(int v, int c) {
        color[v] = c;
        ++assigned;
        for (int ei : incident[v]) {
            HEdge& e = edges[ei];
            edge_trail.push_back({ei, e.mono, e.mono_color});
            --e.uncolored;
            if (e.mono) {
                if (e.mono_color == -1)
                    e.mono_color = c;
                else if (e.mono_color != c)
                    e.mono = false;
            }
            if (e.uncolored == 0 && e.mono) return false;
        }
        // an edge one vertex short of monochromatic pins that vertex away
        // from the shared color
        for (int ei : incident[v]) {
            HEdge& e = edges[ei];
            if (e.uncolored != 1 || !e.mono) continue;
            int u = -1;
            for (int w : e.vs)
                if (color[w] < 0) {
                    u = w;
                    break;
                }
            std::uint64_t bit = std::uint64_t{1} << e.mono_color;
            if (!(forbid[u] & bit)) {
                forbid[u] |= bit;
                forbid_trail.push_back({u, e.mono_color});
                if (std::popcount(forbid[u]) >= k) return false;
            }
        }
        std::uint64_t cbit = std::uint64_t{1} << c;
        for (int ei : incident[v])
            for (int u : edges[ei].vs)
                if (color[u] < 0 && !(seen[u] & cbit)) {
                    seen[u] |= cbit;
                    seen_trail.push_back({u, c});
                }
        return true;
    }

    void undo(int v, std::size_t et, std::size_t ft, std::size_t st, int prev_max) {
        while (edge_trail.size() > et) {
            const EdgeSave& s = edge_trail.back();
            HEdge& e = edges[s.idx];
            ++e.uncolored;
            e.mono = s.mono;
            e.mono_color = s.mono_color;
            edge_trail.pop_back();
        }
        while (forbid_trail.size() > ft) {
            auto [u, c] = forbid_trail.back();
            forbid[u] &= ~(std::uint64_t{1} << c);
            forbid_trail.pop_back();
        }
        while (seen_trail.size() > st) {
            auto [u, c] = seen_trail.back();
            seen[u] &= ~(std::uint64_t{1} << c);
            seen_trail.pop_back();
        }
        color[v] = -1;
        --assigned;
        max_used = prev_max;
    }

    bool dfs() {
        if (assigned == n) return true;
        if (++nodes > max_nodes) throw BudgetExceeded("weak_color_hypergraph: node budget exhausted");
        int v = -1, best_seen = -1, best_deg = -1;
        for (int u = 0; u < n; ++u) {
            if (color[u] >= 0) continue;
            int sc = std::popcount(seen[u]);
            int dg = degree[u];
            if (sc > best_seen || (sc == best_seen && dg > best_deg)) {
                v = u;
                best_seen = sc;
                best_deg = dg;
            }
        }
        int limit = std::min(k - 1, max_used + 1);
        for (int c = 0; c <= limit; ++c) {
            if ((forbid[v] >> c) & 1) continue;
            std::size_t et = edge_trail.size(), ft = forbid_trail.size(), st = seen_trail.size();
            int prev_max = max_used;
            max_used = std::max(max_used, c);
            if (try_assign(v, c) && dfs()) return true;
            undo(v, et, ft, st, prev_max);
        }
        return false;
    }
};

} // namespace

std::optional<Coloring> weak_color_hypergraph(int n, const std::vector<std::vector<int>>& hyperedges,
                                              int k, const std::vector<int>& tiebreak_degree,
                                              long long max_nodes) {
    if (k < 1 || k > 63) throw InputError("weak_color_hypergraph: k must be in [1,63]");
    for (const auto& e : hyperedges)
        if (e.size() < 2) throw InputError("weak_color_hypergraph: hyperedges need >= 2 vertices");
    WeakColorer wc(n, hyperedges, k, tiebreak_degree, max_nodes);
    if (!wc.dfs()) return std::nullopt;
    return Coloring{wc.color, k};
}

BruteForceResult chi_c_bruteforce(const Graph& g) {
    int n = g.vertex_count();
    if (n > 12) throw InputError("chi_c_bruteforce: guarded to n <= 12");
    CliqueList cl = maximal_cliques(g, 2);
    std::vector<std::vector<std::vector<int>>> by_max(n);
    for (const auto& k : cl.cliques) {
        auto vs = k.to_vector();
        by_max[vs.back()].push_back(vs);
    }
    std::vector<int> color(n, -1);
    for (int kk = 1; kk <= n; ++kk) {
        auto rec = [&](auto&& self, int v, int used) -> bool {
            if (v == n) return true;
            int limit = std::min(used, kk - 1);
            for (int c = 0; c <= limit; ++c) {
                color[v] = c;
                bool ok = true;
                for (const auto& clique : by_max[v]) {
                    bool mono = true;
                    for (int u : clique)
                        if (color[u] != c) {
                            mono = false;
                            break;
                        }
                    if (mono) {
                        ok = false;
                        break;
                    }
                }
                if (ok && self(self, v + 1, std::max(used, c + 1))) return true;
            }
            color[v] = -1;
            return false;
        };
        if (rec(rec, 0, 0)) return {kk, Coloring{color, kk}};
    }
    throw Error("chi_c_bruteforce: no coloring found"); // unreachable, n distinct colors always work
}

ExactResult chi_c_exact(const Graph& g, const ExactLimits& limits) {
    int n = g.vertex_count();
    CliqueList cl = maximal_cliques(g, 2, limits.clique_cap);
    if (cl.truncated) throw BudgetExceeded("chi_c_exact: maximal clique cap exceeded");
    if (cl.cliques.empty()) {
        Coloring c{std::vector<int>(n, 0), 1};
        return {ExactResult::Status::proved, 1, 1, std::move(c)};
    }
    std::vector<std::vector<int>> hyper;
    hyper.reserve(cl.cliques.size());
    for (const auto& k : cl.cliques) hyper.push_back(k.to_vector());
    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);

    Rng rng(0x0ddc01055eedull); // exact solve stays deterministic
    GreedyLimits gl;
    gl.clique_cap = limits.clique_cap;
    Coloring best = greedy_clique_coloring(g, rng, gl);
    int upper = best.num_colors;

    for (int k = 2; k < upper; ++k) {
        try {
            auto col = weak_color_hypergraph(n, hyper, k, deg, limits.max_nodes);
            if (col) return {ExactResult::Status::proved, k, k, std::move(*col)};
        } catch (const BudgetExceeded&) {
            return {ExactResult::Status::gap, k, upper, std::move(best)};
        }
    }
    return {ExactResult::Status::proved, upper, upper, std::move(best)};
}

Coloring greedy_clique_coloring(const Graph& g, Rng& rng, const GreedyLimits& limits) {
    int n = g.vertex_count();
    int per_k = limits.repairs_per_k > 0 ? limits.repairs_per_k : std::max(200, 8 * n);
    long long spent = 0;
    int start_k = g.has_any_edge() ? 2 : 1;
    for (int k = start_k; k <= n; ++k) {
        Coloring c;
        c.num_colors = k;
        c.color.resize(n);
        if (k == n) {
            for (int v = 0; v < n; ++v) c.color[v] = v; // all distinct: always accepted
        } else {
            for (int v = 0; v < n; ++v) c.color[v] = rng.next_int(k);
        }
        for (int rep = 0; rep <= per_k; ++rep) {
            Verdict verdict = verify_coloring(g, c, limits.clique_cap);
            if (verdict.valid) {
                c.compact();
                return c;
            }
            if (++spent > limits.total_repairs)
                throw BudgetExceeded("greedy_clique_coloring: repair budget exhausted at k=" +
                                     std::to_string(k));
            const VertexSet& w = *verdict.witness;
            int v = w.nth(rng.next_int(w.count()));
            int old = c.color[v];
            int nc = k > 1 ? rng.next_int(k - 1) : 0;
            if (nc >= old) ++nc;
            c.color[v] = nc;
        }
    }
    throw Error("greedy_clique_coloring: ran past n colors"); // unreachable
}

} // namespace ccn
