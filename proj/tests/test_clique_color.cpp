#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <vector>

#include "ccn/clique_color.hpp"
#include "ccn/graph.hpp"
#include "ccn/rng.hpp"

using namespace ccn;

namespace {

Graph cycle(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph complete(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph complete_tripartite_333() {
    Graph g(9);
    for (int u = 0; u < 9; ++u)
        for (int v = u + 1; v < 9; ++v)
            if (u / 3 != v / 3) g.add_edge(u, v);
    return g;
}

Graph petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);         // outer cycle
        g.add_edge(5 + i, 5 + (i + 2) % 5); // inner pentagram
        g.add_edge(i, 5 + i);               // spokes
    }
    return g;
}

} // namespace

TEST_CASE("coloring validation and compaction") {
    Coloring c{{0, 2, 0}, 3};
    c.validate(3);
    CHECK(c.nonempty_classes() == 2);
    c.compact();
    CHECK(c.color == std::vector<int>{0, 1, 0});
    CHECK(c.num_colors == 2);

    CHECK_THROWS_AS(c.validate(4), InputError);
    Coloring bad{{0, 5}, 2};
    CHECK_THROWS_AS(bad.validate(2), InputError);
    Coloring none{{}, 0};
    CHECK_THROWS_AS(none.validate(0), InputError);

    auto classes = Coloring{{1, 0, 1}, 2}.class_sets(3);
    REQUIRE(classes.size() == 2);
    CHECK(classes[0] == VertexSet::of(3, {1}));
    CHECK(classes[1] == VertexSet::of(3, {0, 2}));
}

TEST_CASE("coloring file round trip") {
    Coloring c{{2, 0, 1, 1}, 3};
    std::ostringstream out;
    write_coloring(c, out);
    CHECK(out.str() == "k=3\n2\n0\n1\n1\n");
    std::istringstream in(out.str());
    Coloring back = read_coloring(in);
    CHECK(back.color == c.color);
    CHECK(back.num_colors == c.num_colors);

    std::istringstream empty("");
    CHECK_THROWS_AS(read_coloring(empty), InputError);
    std::istringstream noheader("0\n1\n");
    CHECK_THROWS_AS(read_coloring(noheader), InputError);
}

TEST_CASE("verifier accepts and rejects with a witness") {
    Graph k3 = complete(3);
    Verdict bad = verify_coloring(k3, Coloring{{0, 0, 0}, 1});
    CHECK_FALSE(bad.valid);
    REQUIRE(bad.witness.has_value());
    CHECK(*bad.witness == VertexSet::full(3));

    // a monochromatic edge inside a bigger clique is fine: the edge is not
    // a maximal clique
    CHECK(verify_coloring(k3, Coloring{{0, 0, 1}, 2}).valid);

    Graph c5 = cycle(5);
    CHECK(verify_coloring(c5, Coloring{{0, 1, 0, 1, 2}, 3}).valid);
    Verdict mono_edge = verify_coloring(c5, Coloring{{0, 0, 1, 0, 1}, 2});
    CHECK_FALSE(mono_edge.valid);
    CHECK(mono_edge.witness->count() == 2);

    // isolated vertices never produce witnesses
    Graph iso(4);
    iso.add_edge(0, 1);
    CHECK(verify_coloring(iso, Coloring{{0, 1, 0, 0}, 2}).valid);
}

TEST_CASE("verifier clique cap") {
    Graph t = complete_tripartite_333();
    // parts {0,1,2} vs the rest: every triangle crosses the split
    Coloring c{{1, 1, 1, 0, 0, 0, 0, 0, 0}, 2};
    CHECK(verify_coloring(t, c).valid);
    // class 0 induces K_{3,3} whose 9 in-class edges all extend outside;
    // a cap of 5 stops the scan before the class is cleared
    CHECK_THROWS_AS(verify_coloring(t, c, 5), BudgetExceeded);
}

TEST_CASE("hypergraph weak coloring on the fano plane") {
    std::vector<std::vector<int>> lines = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                                           {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
    std::vector<int> deg(7, 3);
    CHECK_FALSE(weak_color_hypergraph(7, lines, 2, deg, 1'000'000).has_value());
    auto three = weak_color_hypergraph(7, lines, 3, deg, 1'000'000);
    REQUIRE(three.has_value());
    three->validate(7);
    for (const auto& line : lines) {
        bool mono = three->color[line[0]] == three->color[line[1]] &&
                    three->color[line[1]] == three->color[line[2]];
        CHECK_FALSE(mono);
    }

    CHECK_THROWS_AS(weak_color_hypergraph(3, {{0}}, 2, {0, 0, 0}, 100), InputError);
    CHECK_THROWS_AS(weak_color_hypergraph(3, {{0, 1}}, 0, {0, 0, 0}, 100), InputError);
    CHECK_THROWS_AS(weak_color_hypergraph(7, lines, 2, deg, 1), BudgetExceeded);
}

TEST_CASE("brute force values on closed-form graphs") {
    CHECK(chi_c_bruteforce(Graph(1)).k == 1);
    CHECK(chi_c_bruteforce(Graph(6)).k == 1); // edgeless
    for (int n : {2, 3, 5, 8, 12}) CHECK(chi_c_bruteforce(complete(n)).k == 2);
    CHECK(chi_c_bruteforce(cycle(4)).k == 2);
    CHECK(chi_c_bruteforce(cycle(5)).k == 3);
    CHECK(chi_c_bruteforce(cycle(6)).k == 2);
    CHECK(chi_c_bruteforce(cycle(7)).k == 3);
    Graph p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    CHECK(chi_c_bruteforce(p3).k == 2);
    // triangle-free, chromatic number 3: clique coloring needs 3 as well
    CHECK(chi_c_bruteforce(petersen()).k == 3);
    CHECK_THROWS_AS(chi_c_bruteforce(Graph(13)), InputError);

    auto res = chi_c_bruteforce(cycle(7));
    res.coloring.validate(7);
    CHECK(verify_coloring(cycle(7), res.coloring).valid);
}

TEST_CASE("exact solver matches brute force on random graphs") {
    for (int n : {6, 8}) {
        for (double p : {0.3, 0.5, 0.7}) {
            for (std::uint64_t seed : {21u, 22u, 23u, 24u, 25u}) {
                Rng rng(seed);
                Graph g = gen_gnp(n, p, rng);
                CAPTURE(n);
                CAPTURE(p);
                CAPTURE(seed);
                ExactResult ex = chi_c_exact(g);
                CHECK(ex.proved());
                CHECK(ex.chi() == chi_c_bruteforce(g).k);
                CHECK(ex.coloring.num_colors == ex.chi());
                CHECK(verify_coloring(g, ex.coloring).valid);
            }
        }
    }
}

TEST_CASE("exact solver closed forms") {
    CHECK(chi_c_exact(Graph(9)).chi() == 1);
    CHECK(chi_c_exact(complete(17)).chi() == 2);
    CHECK(chi_c_exact(cycle(5)).chi() == 3);
    CHECK(chi_c_exact(petersen()).chi() == 3);
    // two colors beat the chromatic number on complete graphs
    CHECK(chi_c_exact(complete(4)).chi() == 2);
}

TEST_CASE("exact solver reports a gap when starved") {
    ExactLimits tight;
    tight.max_nodes = 1;
    ExactResult r = chi_c_exact(cycle(5), tight);
    CHECK_FALSE(r.proved());
    CHECK(r.status == ExactResult::Status::gap);
    CHECK(r.lower == 2);
    CHECK(r.upper == 3);
    CHECK(verify_coloring(cycle(5), r.coloring).valid);

    ExactLimits capped;
    capped.clique_cap = 3;
    CHECK_THROWS_AS(chi_c_exact(complete_tripartite_333(), capped), BudgetExceeded);
}

TEST_CASE("greedy coloring is always valid and deterministic per seed") {
    for (std::uint64_t seed : {31u, 32u, 33u}) {
        Rng g_rng(seed);
        Graph g = gen_gnp(30, 0.5, g_rng);
        Rng a(seed * 10), b(seed * 10);
        Coloring ca = greedy_clique_coloring(g, a);
        Coloring cb = greedy_clique_coloring(g, b);
        CHECK(ca.color == cb.color);
        CHECK(ca.num_colors == cb.num_colors);
        CHECK(verify_coloring(g, ca).valid);
        CHECK(ca.num_colors >= 2);
    }
    Rng r(1);
    CHECK(greedy_clique_coloring(Graph(5), r).num_colors == 1);
}

TEST_CASE("greedy never undercuts the exact answer") {
    for (std::uint64_t seed : {41u, 42u, 43u, 44u}) {
        Rng g_rng(seed);
        Graph g = gen_gnp(10, 0.5, g_rng);
        Rng h_rng(seed + 100);
        Coloring h = greedy_clique_coloring(g, h_rng);
        CHECK(h.num_colors >= chi_c_bruteforce(g).k);
    }
}
