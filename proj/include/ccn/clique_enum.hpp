#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccn/graph.hpp"

namespace ccn {

inline constexpr std::uint64_t kDefaultCliqueCap = 10'000'000;

// Lazy enumeration of all maximal cliques with at least min_size vertices.
// Bron-Kerbosch with pivoting (pivot maximizes |P & N(pivot)|), outer level
// in degeneracy order.  The stream stops after `cap` cliques and raises
// truncated(); a truncated stream must never be read as a complete listing.
class CliqueStream {
public:
    CliqueStream(const Graph& g, int min_size, std::uint64_t cap = kDefaultCliqueCap);

    std::optional<VertexSet> next();

    bool truncated() const { return truncated_; }
    std::uint64_t emitted() const { return emitted_; }

private:
    struct Frame {
        VertexSet p, x;
        std::vector<int> ext;
        std::size_t ext_pos = 0;
        bool expanded = false;
    };

    void push_toplevel();

    const Graph& g_;
    int min_size_;
    std::uint64_t cap_;
    std::uint64_t emitted_ = 0;
    bool truncated_ = false;
    std::vector<int> order_; // degeneracy order
    std::vector<int> rank_;
    std::size_t order_pos_ = 0;
    std::vector<Frame> stack_;
    std::vector<int> r_; // current clique prefix, parallel to stack_
};

struct CliqueList {
    std::vector<VertexSet> cliques;
    bool truncated = false;
};

CliqueList maximal_cliques(const Graph& g, int min_size, std::uint64_t cap = kDefaultCliqueCap);

// smallest-last vertex elimination order
std::vector<int> degeneracy_order(const Graph& g);

struct MaximalityCheck {
    enum class Kind { maximal, not_a_clique, not_maximal };
    Kind kind = Kind::maximal;
    int missing_u = -1, missing_v = -1; // non-adjacent pair when not_a_clique
    int extension = -1;                 // witness vertex when not_maximal
    bool is_maximal() const { return kind == Kind::maximal; }
};

MaximalityCheck is_maximal_clique(const Graph& g, const VertexSet& k);

// grows clique k to a maximal one; the order candidates are absorbed in is
// randomized through rng, so distinct seeds explore distinct extensions.
// Throws InputError if k is not a clique.
VertexSet extend_to_maximal(const Graph& g, const VertexSet& k, Rng& rng);

struct FindBudget {
    int restarts = 64;
    int swap_rounds = 40; // local 1-out/2-in improvement attempts per restart
};

// Randomized greedy search (restarts + plateau swaps) for a clique of at
// least target_size vertices inside y.  Empty result means the budget ran
// out, not that no such clique exists.
std::optional<VertexSet> find_clique_in(const Graph& g, const VertexSet& y, int target_size,
                                        Rng& rng, const FindBudget& budget = {});

} // namespace ccn
