#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "ccn/clique_enum.hpp"
#include "ccn/graph.hpp"

namespace ccn {

// Assignment of one color in [0, num_colors) per vertex.  A coloring is
// accepted here when no maximal clique with >= 2 vertices is monochromatic;
// the smallest num_colors admitting such an assignment is what the exact
// solvers below compute.
struct Coloring {
    std::vector<int> color;
    int num_colors = 0;

    void validate(int n) const; // sizes and ranges; throws InputError

    // drops unused color ids and renumbers in order of first appearance
    void compact();

    std::vector<VertexSet> class_sets(int n) const;
    int nonempty_classes() const;
};

void write_coloring(const Coloring& c, std::ostream& out); // "k=<count>" then one color per line
Coloring read_coloring(std::istream& in);
Coloring read_coloring_file(const std::string& path);
void write_coloring_file(const Coloring& c, const std::string& path);

struct Verdict {
    bool valid = false;
    std::optional<VertexSet> witness; // a monochromatic maximal clique when invalid
};

// Checks every maximal clique (>= 2 vertices) against the coloring.  Works
// class by class: maximal cliques of the induced class subgraph that no
// outside vertex extends are exactly the monochromatic maximal cliques.
// Throws BudgetExceeded if the clique cap is hit before a verdict is safe.
Verdict verify_coloring(const Graph& g, const Coloring& c, std::uint64_t clique_cap = kDefaultCliqueCap);

// Branch-and-bound engine shared by the exact solver: weak coloring of an
// explicit hypergraph with k colors (no hyperedge monochromatic), vertex
// order by most distinct colors seen across incident hyperedges, ties by
// descending tiebreak_degree then index.  nullopt means proven infeasible.
std::optional<Coloring> weak_color_hypergraph(int n, const std::vector<std::vector<int>>& hyperedges,
                                              int k, const std::vector<int>& tiebreak_degree,
                                              long long max_nodes);

struct BruteForceResult {
    int k = 0;
    Coloring coloring;
};

// Exhaustive scan over canonical color assignments (vertex 0 fixed to color
// 0, color j only after j-1), by increasing color count.  Guarded to n <= 12.
BruteForceResult chi_c_bruteforce(const Graph& g);

struct ExactLimits {
    long long max_nodes = 4'000'000; // per color count
    std::uint64_t clique_cap = kDefaultCliqueCap;
};

struct ExactResult {
    enum class Status { proved, gap };
    Status status = Status::proved;
    int lower = 1, upper = 1; // equal when proved
    Coloring coloring;        // valid coloring with `upper` colors
    int chi() const { return upper; }
    bool proved() const { return status == Status::proved; }
};

// Materializes the maximal cliques, takes a heuristic coloring as upper
// bound, then closes the bracket from below by iterative deepening on the
// color count.
ExactResult chi_c_exact(const Graph& g, const ExactLimits& limits = {});

struct GreedyLimits {
    int repairs_per_k = 0; // 0: use max(200, 8n)
    long long total_repairs = 200'000;
    std::uint64_t clique_cap = kDefaultCliqueCap;
};

// Randomized construct-and-repair: start from a random assignment, recolor
// one vertex of a monochromatic maximal clique until the verifier is happy,
// widening the palette when repairs stall.  Always returns a valid coloring.
Coloring greedy_clique_coloring(const Graph& g, Rng& rng, const GreedyLimits& limits = {});

} // namespace ccn
