#include "ccn/certificates.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>

#include "ccn/clique_enum.hpp"

namespace ccn {

namespace {

// sum of C(n,s) for s = 1..s_max, saturating at cap+1
std::int64_t subset_count(int n, int s_max, std::int64_t cap) {
    std::int64_t total = 0;
    for (int s = 1; s <= s_max && s <= n; ++s) {
        std::int64_t c = 1;
        for (int i = 0; i < s; ++i) {
            c = c * (n - i) / (i + 1);
            if (c > cap) return cap + 1;
        }
        total += c;
        if (total > cap) return cap + 1;
    }
    return total;
}

void require_proper_subset(const Graph& g, const VertexSet& y, const char* who) {
    if (y.universe_size() != g.vertex_count()) throw InputError(std::string(who) + ": universe mismatch");
    if (y.empty()) throw InputError(std::string(who) + ": y is empty");
    if (y.count() == g.vertex_count()) throw InputError(std::string(who) + ": y is the whole vertex set");
}

void require_matching_n(const Graph& g, const ResolvedThresholds& th, const char* who) {
    if (g.vertex_count() != th.n)
        throw InputError(std::string(who) + ": thresholds resolved for a different n");
}

void consider(AvoidanceReport& rep, const Graph& g, const VertexSet& s) {
    int cnt = nonadjacent_to_all(g, s).count();
    ++rep.examined;
    if (cnt < rep.min_count) {
        rep.min_count = cnt;
        rep.worst_set = s;
    }
}

} // namespace

AvoidanceReport check_avoidance_exhaustive(const Graph& g, const ResolvedThresholds& th,
                                           std::int64_t max_sets) {
    require_matching_n(g, th, "check_avoidance_exhaustive");
    int n = g.vertex_count();
    if (subset_count(n, th.s_max, max_sets) > max_sets)
        throw BudgetExceeded("check_avoidance_exhaustive: too many sets up to size " +
                             std::to_string(th.s_max));
    AvoidanceReport rep;
    rep.mode = AvoidanceMode::exhaustive;
    rep.s_max = th.s_max;
    rep.min_count = INT_MAX;
    rep.threshold = th.avoidance_threshold;
    for (int s = 1; s <= th.s_max && s <= n; ++s) {
        std::vector<int> idx(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            VertexSet set(n);
            for (int v : idx) set.set(v);
            consider(rep, g, set);
            int i = s - 1;
            while (i >= 0 && idx[i] == n - s + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    rep.holds = rep.min_count >= rep.threshold;
    return rep;
}

AvoidanceReport check_avoidance_sampled(const Graph& g, const ResolvedThresholds& th, int trials,
                                        Rng& rng) {
    require_matching_n(g, th, "check_avoidance_sampled");
    if (trials < 1) throw InputError("check_avoidance_sampled: trials must be >= 1");
    int n = g.vertex_count();
    AvoidanceReport rep;
    rep.mode = AvoidanceMode::sampled;
    rep.s_max = th.s_max;
    rep.min_count = INT_MAX;
    rep.threshold = th.avoidance_threshold;
    for (int s = 1; s <= th.s_max && s <= n; ++s) {
        for (int t = 0; t < trials; ++t) {
            VertexSet set(n);
            while (set.count() < s) set.set(rng.next_int(n));
            consider(rep, g, set);
        }
    }
    rep.holds = rep.min_count >= rep.threshold;
    return rep;
}

BadVertexCheck check_bad_vertices(const Graph& g, const VertexSet& y,
                                  const ResolvedThresholds& th) {
    require_matching_n(g, th, "check_bad_vertices");
    require_proper_subset(g, y, "check_bad_vertices");
    int n = g.vertex_count();
    BadVertexCheck out;
    out.bad = VertexSet(n);
    out.frac_threshold = th.profile.bad_frac * y.count();
    out.cap = th.r;
    (VertexSet::full(n) - y).for_each([&](int v) {
        if (non_neighbor_count(g, v, y) <= out.frac_threshold) out.bad.set(v);
    });
    out.holds = out.bad.count() < out.cap;
    return out;
}

SignificanceReport is_significant(const Graph& g, const VertexSet& y,
                                  const ResolvedThresholds& th) {
    require_matching_n(g, th, "is_significant");
    require_proper_subset(g, y, "is_significant");
    int n = g.vertex_count();
    SignificanceReport rep;
    rep.y_size = y.count();
    rep.min_nonneighbors = INT_MAX;
    rep.bad_vertices = VertexSet(n);
    rep.nonneighbor_threshold = th.sig_threshold(rep.y_size);
    rep.bad_cap = th.r;
    double bad_threshold = th.profile.bad_frac * rep.y_size;
    (VertexSet::full(n) - y).for_each([&](int v) {
        int t = non_neighbor_count(g, v, y);
        if (t < rep.min_nonneighbors) {
            rep.min_nonneighbors = t;
            rep.min_vertex = v;
        }
        if (t <= bad_threshold) rep.bad_vertices.set(v);
    });
    rep.condition1_met = rep.min_nonneighbors >= rep.nonneighbor_threshold;
    rep.condition2_met = rep.bad_vertices.count() <= rep.bad_cap;
    return rep;
}

std::optional<std::string> CliqueWitness::violation(const Graph& g) const {
    int n = g.vertex_count();
    if (y.universe_size() != n || clique.universe_size() != n) return "universe mismatch";
    if (!y.contains_all(clique)) return "clique has a vertex outside y";
    auto members = clique.to_vector();
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (!g.adjacent(members[i], members[j]))
                return "clique members " + std::to_string(members[i]) + "," +
                       std::to_string(members[j]) + " are not adjacent";
    if ((int)clique.count() != (int)z_sets.size()) return "clique size differs from the set count";
    VertexSet seen(n);
    for (std::size_t i = 0; i < z_sets.size(); ++i) {
        const VertexSet& z = z_sets[i];
        if (z.count() != m) return "z-set " + std::to_string(i) + " has the wrong size";
        if (!y.contains_all(z)) return "z-set " + std::to_string(i) + " leaves y";
        if (seen.intersects(z)) return "z-sets are not pairwise disjoint";
        seen |= z;
        if (clique.intersection_count(z) != 1)
            return "clique does not meet z-set " + std::to_string(i) + " exactly once";
    }
    for (std::size_t i = 0; i < b_order.size(); ++i) {
        if (i >= z_sets.size()) return "more carved sets than z-sets";
        if (z_sets[i].intersects(g.neighbors(b_order[i])))
            return "carved set " + std::to_string(i) + " touches a neighbor of its vertex";
    }
    VertexSet outside = VertexSet::full(n) - y;
    VertexSet covered(n);
    for (auto [v, partner] : coverage) {
        if (v < 0 || v >= n || partner < 0 || partner >= n) return "coverage index out of range";
        if (!outside.test(v)) return "coverage lists a vertex inside y";
        if (!clique.test(partner)) return "coverage partner is not in the clique";
        if (g.adjacent(v, partner)) return "coverage pair is an edge";
        covered.set(v);
    }
    if (covered != outside) return "coverage does not reach every vertex outside y";
    return std::nullopt;
}

const char* to_string(ConstructStage s) {
    switch (s) {
        case ConstructStage::b_selection: return "b_selection";
        case ConstructStage::z_carving: return "z_carving";
        case ConstructStage::z_sampling: return "z_sampling";
        case ConstructStage::transversal_search: return "transversal_search";
        case ConstructStage::coverage: return "coverage";
        case ConstructStage::success: return "success";
    }
    return "?";
}

namespace {

struct TransversalSearch {
    const Graph& g;
    const std::vector<VertexSet>& zs;
    const std::vector<int>& outside;
    std::int64_t node_budget;
    int coverage_cap;

    std::vector<std::vector<int>> order; // per set, shuffled visit order
    std::vector<int> sigma;              // set processing order
    VertexSet clique;
    std::vector<std::pair<int, int>> coverage;
    std::int64_t nodes = 0;
    int tried = 0;
    bool budget_hit = false;
    bool tries_hit = false;

    TransversalSearch(const Graph& g_, const std::vector<VertexSet>& zs_,
                      const std::vector<int>& outside_, Rng& rng, std::int64_t node_budget_,
                      int coverage_cap_)
        : g(g_), zs(zs_), outside(outside_), node_budget(node_budget_),
          coverage_cap(coverage_cap_), clique(g_.vertex_count()) {
        sigma.resize(zs.size());
        for (std::size_t i = 0; i < zs.size(); ++i) sigma[i] = int(i);
        rng.shuffle(sigma);
        order.resize(zs.size());
        for (std::size_t i = 0; i < zs.size(); ++i) {
            order[i] = zs[i].to_vector();
            rng.shuffle(order[i]);
        }
    }

    bool covers() {
        coverage.clear();
        for (int v : outside) {
            VertexSet free = clique - g.neighbors(v);
            if (free.empty()) return false;
            coverage.emplace_back(v, free.first());
        }
        return true;
    }

    bool dfs(int depth, const VertexSet& allowed) {
        if (depth == (int)zs.size()) {
            ++tried;
            if (covers()) return true;
            if (tried >= coverage_cap) tries_hit = true;
            return false;
        }
        for (int v : order[sigma[depth]]) {
            if (!allowed.test(v)) continue;
            if (++nodes > node_budget) {
                budget_hit = true;
                return false;
            }
            clique.set(v);
            if (dfs(depth + 1, allowed & g.neighbors(v))) return true;
            clique.reset(v);
            if (budget_hit || tries_hit) return false;
        }
        return false;
    }
};

} // namespace

ConstructionResult construct_covering_clique(const Graph& g, const VertexSet& y,
                                             const ResolvedThresholds& th, Rng& rng,
                                             const ConstructBudget& budget) {
    SignificanceReport sig = is_significant(g, y, th);
    if (!sig.significant()) throw InputError("construct_covering_clique: y is not significant");

    int n = g.vertex_count();
    VertexSet outside = VertexSet::full(n) - y;
    ConstructionResult res;

    // B: the bad vertices, padded to r with the outside vertices of smallest
    // non-neighbor count
    VertexSet b_set = sig.bad_vertices;
    int pad_target = std::min<int>(th.r, outside.count());
    if (b_set.count() < pad_target) {
        std::vector<std::pair<int, int>> cands; // (non-neighbor count, vertex)
        (outside - b_set).for_each([&](int v) {
            cands.emplace_back(non_neighbor_count(g, v, y), v);
        });
        std::sort(cands.begin(), cands.end());
        for (auto& [t, v] : cands) {
            if (b_set.count() >= pad_target) break;
            b_set.set(v);
        }
    }
    std::vector<int> b_order = b_set.to_vector();
    res.stage = ConstructStage::z_carving;

    std::int64_t m = th.z_size(y.count());
    if (m < 1) {
        res.detail = "resolved z-set size is below 1";
        return res;
    }
    std::vector<VertexSet> zs;
    VertexSet used(n);
    for (int b : b_order) {
        VertexSet cand = (y - used) - g.neighbors(b);
        if (cand.count() < m) {
            res.detail = "only " + std::to_string(cand.count()) + " disjoint non-neighbors left for vertex " +
                         std::to_string(b) + ", need " + std::to_string(m);
            return res;
        }
        VertexSet z(n);
        for (int v = cand.first(); (int)z.count() < m; v = cand.next_after(v)) z.set(v);
        used |= z;
        zs.push_back(std::move(z));
    }

    res.stage = ConstructStage::z_sampling;
    VertexSet pool = y - used;
    std::vector<int> check_verts = (outside - b_set).to_vector();
    double need = th.profile.z_hit_frac * double(m) - 1e-9;
    for (int j = (int)zs.size(); j < th.k; ++j) {
        if (pool.count() < m) {
            res.detail = "pool exhausted before set " + std::to_string(j);
            return res;
        }
        std::vector<int> pv = pool.to_vector();
        bool accepted = false;
        for (int attempt = 0; attempt < budget.z_retry_cap && !accepted; ++attempt) {
            // partial Fisher-Yates: the first m entries become the sample
            for (std::int64_t i = 0; i < m; ++i)
                std::swap(pv[i], pv[i + rng.next_below(pv.size() - i)]);
            VertexSet z(n);
            for (std::int64_t i = 0; i < m; ++i) z.set(pv[i]);
            accepted = true;
            for (int v : check_verts) {
                int nn = int(m) - z.intersection_count(g.neighbors(v));
                if (double(nn) < need) {
                    accepted = false;
                    break;
                }
            }
            if (accepted) {
                pool -= z;
                zs.push_back(std::move(z));
            }
        }
        if (!accepted) {
            res.detail = "rejection cap hit while sampling set " + std::to_string(j);
            return res;
        }
    }

    res.stage = ConstructStage::transversal_search;
    std::vector<int> outside_verts = outside.to_vector();
    std::int64_t nodes_left = budget.transversal_node_budget;
    int tries_left = budget.coverage_tries;
    bool any_clique = false;
    for (int restart = 0; restart < budget.restarts; ++restart) {
        TransversalSearch ts(g, zs, outside_verts, rng, nodes_left, tries_left);
        bool found = ts.dfs(0, VertexSet::full(n));
        res.transversal_nodes += ts.nodes;
        res.cliques_tried += ts.tried;
        nodes_left -= ts.nodes;
        tries_left -= ts.tried;
        any_clique = any_clique || ts.tried > 0 || found;
        if (found) {
            res.stage = ConstructStage::success;
            CliqueWitness w;
            w.y = y;
            w.clique = ts.clique;
            w.coverage = std::move(ts.coverage);
            w.b_order = std::move(b_order);
            w.z_sets = std::move(zs);
            w.m = m;
            res.witness = std::move(w);
            return res;
        }
        if (!ts.budget_hit && !ts.tries_hit) {
            // the sweep was complete: the verdict is final
            res.search_exhausted = true;
            break;
        }
        if (nodes_left <= 0 || tries_left <= 0) break;
    }
    if (!any_clique) {
        res.detail = res.search_exhausted ? "no transversal clique exists"
                                          : "node budget exhausted before any transversal clique";
        return res;
    }
    res.stage = ConstructStage::coverage;
    res.detail = "examined " + std::to_string(res.cliques_tried) +
                 " transversal cliques, none covers every outside vertex";
    return res;
}

const char* to_string(RefuteStage s) {
    switch (s) {
        case RefuteStage::start: return "start";
        case RefuteStage::picked_representatives: return "picked_representatives";
        case RefuteStage::found_significant_class: return "found_significant_class";
        case RefuteStage::built_clique: return "built_clique";
        case RefuteStage::extended_maximal: return "extended_maximal";
        case RefuteStage::witness_found: return "witness_found";
    }
    return "?";
}

RefutationOutcome refute_coloring(const Graph& g, const Coloring& c,
                                  const ResolvedThresholds& th, Rng& rng,
                                  const ConstructBudget& budget) {
    int n = g.vertex_count();
    if (n != th.n) throw InputError("refute_coloring: thresholds resolved for a different n");
    c.validate(n);
    RefutationOutcome out;
    std::vector<VertexSet> classes = c.class_sets(n);

    std::vector<int> nonempty;
    for (int i = 0; i < (int)classes.size(); ++i)
        if (!classes[i].empty()) nonempty.push_back(i);

    if (nonempty.size() <= 1) {
        // any maximal clique on >= 2 vertices is monochromatic here
        Verdict v = verify_coloring(g, c);
        if (!v.valid) {
            out.reached = RefuteStage::witness_found;
            out.chosen_class = nonempty.empty() ? -1 : nonempty.front();
            out.witness = v.witness;
        } else {
            out.failure = "single-class coloring is valid: the graph has no edge";
        }
        return out;
    }

    out.out_of_regime = (int)nonempty.size() > th.s_max;

    for (int i : nonempty) {
        const VertexSet& yi = classes[i];
        ClassRepresentative rep;
        rep.class_index = i;
        rep.t = INT_MAX;
        (VertexSet::full(n) - yi).for_each([&](int v) {
            int t = non_neighbor_count(g, v, yi);
            if (t < rep.t) {
                rep.t = t;
                rep.vertex = v;
            }
        });
        out.representatives.push_back(rep);
    }
    out.reached = RefuteStage::picked_representatives;

    const ClassRepresentative* best = &out.representatives.front();
    for (const auto& rep : out.representatives)
        if (rep.t > best->t) best = &rep;
    out.chosen_class = best->class_index;
    const VertexSet& y = classes[out.chosen_class];

    SignificanceReport sig = is_significant(g, y, th);
    out.significance = sig;
    if (!sig.condition1_met) {
        out.failure = "averaging shortfall: best class has a vertex with only " +
                      std::to_string(sig.min_nonneighbors) + " non-neighbors, threshold " +
                      std::to_string(sig.nonneighbor_threshold);
        return out;
    }
    if (!sig.condition2_met) {
        out.failure = "class has " + std::to_string(sig.bad_vertices.count()) +
                      " bad vertices, cap " + std::to_string(sig.bad_cap);
        return out;
    }
    out.reached = RefuteStage::found_significant_class;

    ConstructionResult built = construct_covering_clique(g, y, th, rng, budget);
    if (!built.ok()) {
        out.failure = std::string("construction failed at ") + to_string(built.stage) + ": " +
                      built.detail;
        return out;
    }
    out.construction = built.witness;
    out.reached = RefuteStage::built_clique;

    // every vertex outside y has a non-neighbor in the clique, so the greedy
    // extension can only absorb vertices of y
    VertexSet maximal = extend_to_maximal(g, built.witness->clique, rng);
    out.reached = RefuteStage::extended_maximal;

    if (!y.contains_all(maximal)) {
        out.failure = "extension left the class";
        return out;
    }
    if (maximal.count() < 2) {
        out.failure = "witness clique has fewer than 2 vertices";
        return out;
    }
    MaximalityCheck mc = is_maximal_clique(g, maximal);
    if (!mc.is_maximal()) {
        out.failure = "extended clique failed the maximality check";
        return out;
    }
    out.witness = maximal;
    out.reached = RefuteStage::witness_found;
    return out;
}

// ---- serialization ---------------------------------------------------------

namespace {

const char* size_rule_name(SizeRule r) {
    return r == SizeRule::power_of_n ? "power_of_n" : "fraction_of_y";
}

const char* avoid_rule_name(AvoidanceRule r) {
    return r == AvoidanceRule::power_of_n ? "power_of_n" : "expectation_fraction";
}

nlohmann::json set_to_json(const VertexSet& s) { return nlohmann::json(s.to_vector()); }

} // namespace

nlohmann::json to_json(const ParameterProfile& p) {
    return {
        {"name", p.name},
        {"class_coeff", p.class_coeff},
        {"indep_exp", p.indep_exp},
        {"indep_exp_hi", p.indep_exp_hi},
        {"bad_frac", p.bad_frac},
        {"bad_frac_after", p.bad_frac_after},
        {"bad_count_coeff", p.bad_count_coeff},
        {"k_coeff", p.k_coeff},
        {"s_coeff", p.s_coeff},
        {"m_exp", p.m_exp},
        {"z_hit_frac", p.z_hit_frac},
        {"miss_base", p.miss_base},
        {"sig_rule", size_rule_name(p.sig_rule)},
        {"sig_frac", p.sig_frac},
        {"m_rule", size_rule_name(p.m_rule)},
        {"avoid_rule", avoid_rule_name(p.avoid_rule)},
        {"avoid_frac", p.avoid_frac},
    };
}

nlohmann::json to_json(const ResolvedThresholds& th) {
    return {
        {"n", th.n},
        {"log2_n", th.log2_n},
        {"s_max", th.s_max},
        {"k", th.k},
        {"r", th.r},
        {"avoidance_threshold", th.avoidance_threshold},
        {"sig_nonneighbor", th.sig_nonneighbor},
        {"m_fixed", th.m_fixed},
        {"profile", to_json(th.profile)},
    };
}

nlohmann::json to_json(const AvoidanceReport& r) {
    return {
        {"mode", r.mode == AvoidanceMode::exhaustive ? "exhaustive" : "sampled"},
        {"s_max", r.s_max},
        {"examined", r.examined},
        {"min_count", r.min_count},
        {"worst_set", set_to_json(r.worst_set)},
        {"threshold", r.threshold},
        {"holds", r.holds},
    };
}

nlohmann::json to_json(const BadVertexCheck& r) {
    return {
        {"bad", set_to_json(r.bad)},
        {"frac_threshold", r.frac_threshold},
        {"cap", r.cap},
        {"holds", r.holds},
    };
}

nlohmann::json to_json(const SignificanceReport& r) {
    return {
        {"y_size", r.y_size},
        {"min_nonneighbors", r.min_nonneighbors},
        {"min_vertex", r.min_vertex},
        {"bad_vertices", set_to_json(r.bad_vertices)},
        {"nonneighbor_threshold", r.nonneighbor_threshold},
        {"bad_cap", r.bad_cap},
        {"condition1_met", r.condition1_met},
        {"condition2_met", r.condition2_met},
        {"significant", r.significant()},
    };
}

nlohmann::json to_json(const CliqueWitness& w) {
    nlohmann::json zs = nlohmann::json::array();
    for (const auto& z : w.z_sets) zs.push_back(set_to_json(z));
    nlohmann::json cov = nlohmann::json::array();
    for (auto [v, partner] : w.coverage) cov.push_back({v, partner});
    return {
        {"y", set_to_json(w.y)},
        {"clique", set_to_json(w.clique)},
        {"coverage", cov},
        {"b_order", w.b_order},
        {"z_sets", zs},
        {"m", w.m},
    };
}

nlohmann::json to_json(const ConstructionResult& r) {
    nlohmann::json j{
        {"stage", to_string(r.stage)},
        {"detail", r.detail},
        {"transversal_nodes", r.transversal_nodes},
        {"cliques_tried", r.cliques_tried},
        {"search_exhausted", r.search_exhausted},
    };
    if (r.witness) j["witness"] = to_json(*r.witness);
    return j;
}

nlohmann::json to_json(const RefutationOutcome& r) {
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& rep : r.representatives)
        reps.push_back({{"class", rep.class_index}, {"vertex", rep.vertex}, {"t", rep.t}});
    nlohmann::json j{
        {"reached", to_string(r.reached)},
        {"failure", r.failure},
        {"out_of_regime", r.out_of_regime},
        {"representatives", reps},
        {"chosen_class", r.chosen_class},
    };
    if (r.significance) j["significance"] = to_json(*r.significance);
    if (r.construction) j["construction"] = to_json(*r.construction);
    if (r.witness) j["witness"] = set_to_json(*r.witness);
    return j;
}

nlohmann::json certificate_record(nlohmann::json payload, const ResolvedThresholds& th,
                                  std::uint64_t seed) {
    return {
        {"version", kToolkitVersion},
        {"generator", Rng::kGeneratorId},
        {"seed", seed},
        {"thresholds", to_json(th)},
        {"payload", std::move(payload)},
    };
}

} // namespace ccn
