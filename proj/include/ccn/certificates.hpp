#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ccn/bitset.hpp"
#include "ccn/clique_color.hpp"
#include "ccn/graph.hpp"
#include "ccn/profile.hpp"
#include "ccn/rng.hpp"

namespace ccn {

// ---- small-set avoidance --------------------------------------------------
//
// The property: every vertex set S with |S| <= s_max leaves at least
// `threshold` vertices adjacent to none of S.

enum class AvoidanceMode { exhaustive, sampled };

struct AvoidanceReport {
    AvoidanceMode mode = AvoidanceMode::exhaustive;
    int s_max = 0;
    std::int64_t examined = 0;
    int min_count = 0;    // worst untouched count seen
    VertexSet worst_set;  // a set attaining it (first found)
    std::int64_t threshold = 0;
    bool holds = false; // min_count >= threshold
};

// all sets of size 1..s_max; throws BudgetExceeded when their number
// exceeds max_sets
AvoidanceReport check_avoidance_exhaustive(const Graph& g, const ResolvedThresholds& th,
                                           std::int64_t max_sets = 5'000'000);

// `trials` uniform sets of each size 1..s_max
AvoidanceReport check_avoidance_sampled(const Graph& g, const ResolvedThresholds& th, int trials,
                                        Rng& rng);

// ---- bad vertices ----------------------------------------------------------
//
// v outside y is bad when it has at most bad_frac*|y| non-neighbors in y.
// The property: fewer than r outside vertices are bad.

struct BadVertexCheck {
    VertexSet bad;
    double frac_threshold = 0; // bad_frac * |y|
    int cap = 0;               // r
    bool holds = false;        // |bad| < cap
};

BadVertexCheck check_bad_vertices(const Graph& g, const VertexSet& y,
                                  const ResolvedThresholds& th);

// ---- significance ----------------------------------------------------------

struct SignificanceReport {
    std::int64_t y_size = 0;
    int min_nonneighbors = 0;    // min over v outside y of non-neighbor count
    int min_vertex = -1;         // a vertex attaining it (lowest index)
    VertexSet bad_vertices;      // as in BadVertexCheck
    std::int64_t nonneighbor_threshold = 0;
    int bad_cap = 0;
    bool condition1_met = false; // min_nonneighbors >= nonneighbor_threshold
    bool condition2_met = false; // |bad_vertices| <= bad_cap
    bool significant() const { return condition1_met && condition2_met; }
};

SignificanceReport is_significant(const Graph& g, const VertexSet& y,
                                  const ResolvedThresholds& th);

// ---- covering clique construction ------------------------------------------

struct CliqueWitness {
    VertexSet y;
    VertexSet clique; // one vertex per z_set, all inside y
    // for each v outside y, a member of the clique not adjacent to v
    std::vector<std::pair<int, int>> coverage;
    std::vector<int> b_order;        // the padded B, in carving order
    std::vector<VertexSet> z_sets;   // first b_order.size() carved, rest sampled
    std::int64_t m = 0;              // common z-set size

    // nullopt when every structural invariant holds, else a description
    std::optional<std::string> violation(const Graph& g) const;
    bool check(const Graph& g) const { return !violation(g).has_value(); }
};

enum class ConstructStage {
    b_selection,
    z_carving,
    z_sampling,
    transversal_search,
    coverage,
    success,
};
const char* to_string(ConstructStage s);

struct ConstructBudget {
    int z_retry_cap = 200;                  // rejection-sampling attempts per set
    std::int64_t transversal_node_budget = 200'000; // DFS nodes across restarts
    int coverage_tries = 25;                // transversal cliques examined for coverage
    int restarts = 8;                       // DFS order reshuffles
};

struct ConstructionResult {
    ConstructStage stage = ConstructStage::b_selection; // success, or where it stopped
    std::string detail;                                 // failure reason
    std::optional<CliqueWitness> witness;
    std::int64_t transversal_nodes = 0; // DFS nodes actually expanded
    int cliques_tried = 0;              // transversal cliques checked for coverage
    bool search_exhausted = false;      // DFS completed without truncation
    bool ok() const { return stage == ConstructStage::success; }
};

// Builds a clique with one vertex in each of k disjoint subsets of y, plus a
// non-neighbor certificate for every vertex outside y.  Throws InputError
// when y is not significant.
ConstructionResult construct_covering_clique(const Graph& g, const VertexSet& y,
                                             const ResolvedThresholds& th, Rng& rng,
                                             const ConstructBudget& budget = {});

// ---- refutation ------------------------------------------------------------

enum class RefuteStage {
    start,
    picked_representatives,
    found_significant_class,
    built_clique,
    extended_maximal,
    witness_found,
};
const char* to_string(RefuteStage s);

struct ClassRepresentative {
    int class_index = -1;
    int vertex = -1; // argmin of non-neighbor count into the class
    int t = 0;       // its non-neighbor count
};

struct RefutationOutcome {
    RefuteStage reached = RefuteStage::start;
    std::string failure; // empty when a witness was found
    bool out_of_regime = false; // more classes than s_max
    std::vector<ClassRepresentative> representatives;
    int chosen_class = -1;
    std::optional<SignificanceReport> significance;
    std::optional<CliqueWitness> construction;
    std::optional<VertexSet> witness; // maximal clique inside one class
    bool witness_found() const { return reached == RefuteStage::witness_found; }
};

// Runs the lower-bound argument as a procedure: representatives, averaging,
// significance, covering clique, extension, confirmation.  Single-class
// colorings short-circuit through verify_coloring.
RefutationOutcome refute_coloring(const Graph& g, const Coloring& c,
                                  const ResolvedThresholds& th, Rng& rng,
                                  const ConstructBudget& budget = {});

// ---- serialization ---------------------------------------------------------

nlohmann::json to_json(const ParameterProfile& p);
nlohmann::json to_json(const ResolvedThresholds& th);
nlohmann::json to_json(const AvoidanceReport& r);
nlohmann::json to_json(const BadVertexCheck& r);
nlohmann::json to_json(const SignificanceReport& r);
nlohmann::json to_json(const CliqueWitness& w);
nlohmann::json to_json(const ConstructionResult& r);
nlohmann::json to_json(const RefutationOutcome& r);

// audit record: payload plus the resolved profile and the seed that drove it
nlohmann::json certificate_record(nlohmann::json payload, const ResolvedThresholds& th,
                                  std::uint64_t seed);

} // namespace ccn
