#include "ccn/clique_enum.hpp"

#include <algorithm>

namespace ccn {

std::vector<int> degeneracy_order(const Graph& g) {
    int n = g.vertex_count();
    VertexSet remaining = VertexSet::full(n);
    std::vector<int> order;
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int best = -1, best_deg = n + 1;
        remaining.for_each([&](int v) {
            int d = g.neighbors(v).intersection_count(remaining);
            if (d < best_deg) {
                best_deg = d;
                best = v;
            }
        });
        order.push_back(best);
        remaining.reset(best);
    }
    return order;
}

CliqueStream::CliqueStream(const Graph& g, int min_size, std::uint64_t cap)
    : g_(g), min_size_(min_size), cap_(cap), order_(degeneracy_order(g)), rank_(g.vertex_count()) {
    for (int i = 0; i < g.vertex_count(); ++i) rank_[order_[i]] = i;
}

void CliqueStream::push_toplevel() {
    int v = order_[order_pos_++];
    Frame f;
    f.p = VertexSet(g_.vertex_count());
    f.x = VertexSet(g_.vertex_count());
    g_.neighbors(v).for_each([&](int u) {
        if (rank_[u] > rank_[v])
            f.p.set(u);
        else
            f.x.set(u);
    });
    r_.push_back(v);
    stack_.push_back(std::move(f));
}

std::optional<VertexSet> CliqueStream::next() {
    while (true) {
        if (stack_.empty()) {
            if (truncated_ || order_pos_ >= order_.size()) return std::nullopt;
            push_toplevel();
        }
        Frame& f = stack_.back();
        if (!f.expanded) {
            f.expanded = true;
            if (f.p.empty() && f.x.empty()) {
                bool emit = int(r_.size()) >= min_size_;
                VertexSet out(g_.vertex_count());
                if (emit) {
                    if (emitted_ == cap_) {
                        // one more clique exists than the cap allows
                        truncated_ = true;
                        stack_.clear();
                        r_.clear();
                        return std::nullopt;
                    }
                    for (int v : r_) out.set(v);
                }
                stack_.pop_back();
                r_.pop_back();
                if (emit) {
                    ++emitted_;
                    return out;
                }
                continue;
            }
            if (int(r_.size()) + f.p.count() < min_size_) {
                stack_.pop_back();
                r_.pop_back();
                continue;
            }
            int pivot = -1, best = -1;
            auto consider = [&](int u) {
                int c = f.p.intersection_count(g_.neighbors(u));
                if (c > best) {
                    best = c;
                    pivot = u;
                }
            };
            f.p.for_each(consider);
            f.x.for_each(consider);
            f.ext = (f.p - g_.neighbors(pivot)).to_vector();
        }
        if (f.ext_pos == f.ext.size()) {
            stack_.pop_back();
            r_.pop_back();
            continue;
        }
        int v = f.ext[f.ext_pos++];
        Frame child;
        child.p = f.p & g_.neighbors(v);
        child.x = f.x & g_.neighbors(v);
        f.p.reset(v);
        f.x.set(v);
        r_.push_back(v);
        stack_.push_back(std::move(child));
    }
}

CliqueList maximal_cliques(const Graph& g, int min_size, std::uint64_t cap) {
    CliqueStream stream(g, min_size, cap);
    CliqueList out;
    while (auto c = stream.next()) out.cliques.push_back(std::move(*c));
    out.truncated = stream.truncated();
    return out;
}

MaximalityCheck is_maximal_clique(const Graph& g, const VertexSet& k) {
    MaximalityCheck res;
    std::vector<int> vs = k.to_vector();
    for (int u : vs) {
        VertexSet miss = k - g.neighbors(u);
        miss.reset(u);
        if (!miss.empty()) {
            res.kind = MaximalityCheck::Kind::not_a_clique;
            res.missing_u = u;
            res.missing_v = miss.first();
            return res;
        }
    }
    VertexSet cand = VertexSet::full(g.vertex_count()) - k;
    for (int u : vs) cand &= g.neighbors(u);
    if (!cand.empty()) {
        res.kind = MaximalityCheck::Kind::not_maximal;
        res.extension = cand.first();
    }
    return res;
}

VertexSet extend_to_maximal(const Graph& g, const VertexSet& k, Rng& rng) {
    MaximalityCheck chk = is_maximal_clique(g, k);
    if (chk.kind == MaximalityCheck::Kind::not_a_clique)
        throw InputError("extend_to_maximal: input set is not a clique");
    VertexSet out = k;
    VertexSet cand = VertexSet::full(g.vertex_count()) - out;
    out.for_each([&](int u) { cand &= g.neighbors(u); });
    while (!cand.empty()) {
        int v = cand.nth(rng.next_int(cand.count()));
        out.set(v);
        cand &= g.neighbors(v);
    }
    return out;
}

std::optional<VertexSet> find_clique_in(const Graph& g, const VertexSet& y, int target_size,
                                        Rng& rng, const FindBudget& budget) {
    if (target_size <= 0) return VertexSet(g.vertex_count());
    auto absorb = [&](VertexSet& k) {
        VertexSet cand = y;
        k.for_each([&](int w) { cand &= g.neighbors(w); });
        cand -= k;
        while (!cand.empty()) {
            int v = cand.nth(rng.next_int(cand.count()));
            k.set(v);
            cand &= g.neighbors(v);
        }
    };
    for (int rs = 0; rs < budget.restarts; ++rs) {
        VertexSet k(g.vertex_count());
        absorb(k);
        for (int it = 0; it < budget.swap_rounds && k.count() < target_size; ++it) {
            if (k.empty()) break;
            int u = k.nth(rng.next_int(k.count()));
            VertexSet common = y;
            k.for_each([&](int w) {
                if (w != u) common &= g.neighbors(w);
            });
            common.reset(u);
            if (common.count() < 2) continue;
            std::vector<int> cs = common.to_vector();
            rng.shuffle(cs);
            int a = -1, b = -1;
            for (std::size_t i = 0; i < cs.size() && a < 0; ++i)
                for (std::size_t j = i + 1; j < cs.size(); ++j)
                    if (g.adjacent(cs[i], cs[j])) {
                        a = cs[i];
                        b = cs[j];
                        break;
                    }
            if (a < 0) continue;
            k.reset(u);
            k.set(a);
            k.set(b);
            absorb(k);
        }
        if (k.count() >= target_size) return k;
    }
    return std::nullopt;
}

} // namespace ccn
