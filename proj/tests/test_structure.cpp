#include <doctest.h>

#include <gridcleave/errors.hpp>
#include <gridcleave/oracle.hpp>
#include <gridcleave/structure.hpp>

#include <algorithm>
#include <set>
#include <vector>

using namespace gridcleave;

namespace {

Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return make_graph(n, std::move(e));
}

Graph k4() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

// Hub 0, rim 1..k.
Graph wheel(int k) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= k; ++i) {
        e.emplace_back(0, i);
        e.emplace_back(i, i == k ? 1 : i + 1);
    }
    return make_graph(k + 1, std::move(e));
}

Graph prism() {
    return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

Graph octahedron() {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v)
            if (!(u / 2 == v / 2 && u % 2 == 0 && v == u + 1)) e.emplace_back(u, v);
    return make_graph(6, std::move(e));
}

// Terminals 0,1 joined by three paths with the given interior node counts;
// interiors numbered consecutively from 2.
Graph theta(int a, int b, int c) {
    std::vector<std::pair<int, int>> e;
    int next = 2;
    for (int len : {a, b, c}) {
        int prev = 0;
        for (int i = 0; i < len; ++i) {
            e.emplace_back(prev, next);
            prev = next++;
        }
        e.emplace_back(prev, 1);
    }
    return make_graph(next, std::move(e));
}

} // namespace

TEST_CASE("st-numbering validator") {
    Graph c4 = cycle(4);
    CHECK(check_st_numbering(c4, {{0, 1, 2, 3}, 0, 3}));
    CHECK(check_st_numbering(c4, {{0, 3, 1, 2}, 0, 2}));
    CHECK_FALSE(check_st_numbering(c4, {{0, 2, 1, 3}, 0, 3})); // 2 has no earlier neighbor
    CHECK_FALSE(check_st_numbering(c4, {{0, 1, 2, 3}, 0, 2})); // wrong endpoints
    CHECK_FALSE(check_st_numbering(c4, {{0, 1, 2}, 0, 2}));    // wrong length
    CHECK_FALSE(check_st_numbering(c4, {{0, 1, 1, 3}, 0, 3})); // repeated node
}

TEST_CASE("st-numbering on fixed graphs") {
    StNumbering tri = st_numbering(cycle(3), 0, 2);
    CHECK(tri.order == std::vector<int>{0, 1, 2});

    StNumbering c4 = st_numbering(cycle(4), 0, 2);
    CHECK(c4.order == std::vector<int>{0, 3, 1, 2});
    CHECK(check_st_numbering(cycle(4), c4));

    StNumbering th = st_numbering(theta(1, 1, 1), 0, 1);
    CHECK(th.order == std::vector<int>{0, 4, 3, 2, 1});
    CHECK(check_st_numbering(theta(1, 1, 1), th));

    // Virtual edge: a bare path admits a numbering between its ends.
    Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
    CHECK(st_numbering(p3, 0, 2).order == std::vector<int>{0, 1, 2});
}

TEST_CASE("st-numbering rejects bad inputs") {
    CHECK_THROWS_AS(st_numbering(cycle(4), 0, 0), PreconditionError);
    CHECK_THROWS_AS(st_numbering(cycle(4), 0, 4), PreconditionError);
    Graph two_parts = make_graph(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(st_numbering(two_parts, 0, 1), PreconditionError);
    // Articulation survives the virtual edge: bowtie around node 2.
    Graph bowtie = make_graph(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
    CHECK_THROWS_AS(st_numbering(bowtie, 0, 1), PreconditionError);
}

TEST_CASE("st-numbering on generated graphs") {
    for (int n : {6, 8, 10, 12})
        for (unsigned long long seed : {1ULL, 2ULL, 3ULL}) {
            Instance inst = gen_random(n, 2, seed);
            const Graph& g = inst.graph;
            for (auto [s, t] : {std::pair{0, 1}, {0, n - 1}, {1, n - 2}}) {
                StNumbering num = st_numbering(g, s, t);
                CHECK(check_st_numbering(g, num));
            }
        }
}

TEST_CASE("pseudo-paths") {
    Graph c6 = cycle(6);
    PseudoPath pp = pseudo_path(c6, {1, 2}, 0, 3);
    CHECK(pp.interior == std::vector<int>{1, 2});
    CHECK(check_pseudo_path(c6, pp));

    Graph th = theta(1, 1, 1);
    CHECK(pseudo_path(th, {2}, 0, 1).interior == std::vector<int>{2});
    CHECK(pseudo_path(th, {4}, 0, 1).interior == std::vector<int>{4});

    CHECK_THROWS_AS(pseudo_path(c6, {1, 2, 4}, 0, 3), PreconditionError);
    CHECK_THROWS_AS(pseudo_path(c6, {1}, 0, 3), PreconditionError);

    // Branching component: every interior node still sees both directions.
    Graph w5 = wheel(5);
    for (const auto& comp : components_after_removal(w5, {1, 3})) {
        PseudoPath p = pseudo_path(w5, comp, 1, 3);
        CHECK(check_pseudo_path(w5, p));
        CHECK(p.interior.size() == comp.size());
    }
}

TEST_CASE("induced cycle enumeration") {
    CHECK(enumerate_induced_cycles(cycle(3)) ==
          std::vector<std::vector<int>>{{0, 1, 2}});
    CHECK(enumerate_induced_cycles(cycle(5)) ==
          std::vector<std::vector<int>>{{0, 1, 2, 3, 4}});
    CHECK(enumerate_induced_cycles(k4()) ==
          std::vector<std::vector<int>>{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    CHECK(enumerate_induced_cycles(wheel(5)).size() == 6);  // 5 hub triangles + rim
    CHECK(enumerate_induced_cycles(prism()).size() == 5);   // 2 triangles + 3 squares
    CHECK(enumerate_induced_cycles(octahedron()).size() == 11); // 8 faces + 3 equators
}

TEST_CASE("nonseparating induced cycles on fixed graphs") {
    CHECK(nonseparating_induced_cycle(k4(), 0, 1, 3) == std::vector<int>{0, 1, 2});
    CHECK(nonseparating_induced_cycle(k4(), 0, 1, 2) == std::vector<int>{0, 1, 3});
    CHECK(nonseparating_induced_cycle(prism(), 0, 1, 5) == std::vector<int>{0, 1, 2});
    CHECK(nonseparating_induced_cycle(wheel(5), 1, 2, 0) ==
          std::vector<int>{1, 2, 3, 4, 5});
    CHECK(nonseparating_induced_cycle(octahedron(), 0, 2, 1) == std::vector<int>{0, 2, 4});

    CHECK_THROWS_AS(nonseparating_induced_cycle(cycle(4), 0, 1, 2), PreconditionError);
    CHECK_THROWS_AS(nonseparating_induced_cycle(k4(), 0, 1, 1), PreconditionError);
    Graph oct = octahedron();
    CHECK_THROWS_AS(nonseparating_induced_cycle(oct, 0, 1, 2), PreconditionError); // non-edge
}

TEST_CASE("nonseparating induced cycles match the exhaustive oracle") {
    std::vector<Graph> graphs{k4(), prism(), wheel(5), octahedron(),
                              gen_random(8, 3, 11).graph, gen_random(10, 3, 12).graph};
    for (const Graph& g : graphs) {
        auto all = enumerate_induced_cycles(g);
        auto in_cycle = [](const std::vector<int>& c, int v) {
            return std::find(c.begin(), c.end(), v) != c.end();
        };
        auto has_edge_of = [](const std::vector<int>& c, int a, int b) {
            const int k = static_cast<int>(c.size());
            for (int i = 0; i < k; ++i) {
                int x = c[i], y = c[(i + 1) % k];
                if ((x == a && y == b) || (x == b && y == a)) return true;
            }
            return false;
        };
        auto rest_connected = [&](const std::vector<int>& c) {
            std::vector<int> rest;
            for (int v = 0; v < g.n; ++v)
                if (!in_cycle(c, v)) rest.push_back(v);
            return !rest.empty() && connected_induced(g, rest);
        };
        for (auto [t, r] : g.edges)
            for (int avoid = 0; avoid < g.n; ++avoid) {
                if (avoid == t || avoid == r) continue;
                std::vector<int> c = nonseparating_induced_cycle(g, t, r, avoid);
                CHECK(std::find(all.begin(), all.end(), c) != all.end());
                CHECK(has_edge_of(c, t, r));
                CHECK_FALSE(in_cycle(c, avoid));
                CHECK(rest_connected(c));
            }
    }
}

TEST_CASE("ear decompositions on fixed graphs") {
    EarDecomposition d = nonseparating_ear_decomposition(k4(), 0, 1, 3);
    CHECK(d.ears == std::vector<std::vector<int>>{{0, 1, 2}, {0, 3, 1}});
    CHECK(check_ear_decomposition(k4(), d));

    EarDecomposition p = nonseparating_ear_decomposition(prism(), 0, 1, 5);
    CHECK(p.ears == std::vector<std::vector<int>>{{0, 1, 2}, {0, 3, 4, 1}, {2, 5, 3}});
    CHECK(check_ear_decomposition(prism(), p));

    // Tampering must be caught.
    EarDecomposition bad = p;
    std::swap(bad.ears[1], bad.ears[2]);
    CHECK_FALSE(check_ear_decomposition(prism(), bad));
    bad = p;
    bad.ears.pop_back();
    CHECK_FALSE(check_ear_decomposition(prism(), bad));
    bad = p;
    bad.avoided = 4;
    CHECK_FALSE(check_ear_decomposition(prism(), bad));
    bad = p;
    bad.through = {3, 4}; // prism edge not on the initial cycle
    CHECK_FALSE(check_ear_decomposition(prism(), bad));
}

TEST_CASE("ear decompositions on generated graphs") {
    std::vector<Graph> graphs{wheel(5), wheel(7), octahedron(), gen_random(8, 3, 21).graph,
                              gen_random(12, 3, 22).graph};
    for (const Graph& g : graphs) {
        auto [t, r] = g.edges.front();
        for (int avoid : {g.n - 1, g.n / 2}) {
            if (avoid == t || avoid == r) continue;
            EarDecomposition d = nonseparating_ear_decomposition(g, t, r, avoid);
            CHECK(check_ear_decomposition(g, d));
            std::set<int> covered;
            for (const auto& ear : d.ears) covered.insert(ear.begin(), ear.end());
            CHECK(static_cast<int>(covered.size()) == g.n);
        }
    }
}

TEST_CASE("decompose_q fixed cases") {
    // No separation pair at all: the quotient is the graph itself.
    Decomposition k = decompose_q(k4(), 4);
    CHECK(k.which == Decomposition::Case::contracted);
    CHECK(k.quotient.nodes == std::vector<int>{0, 1, 2, 3});
    CHECK(k.quotient.total_weight() == 0);
    CHECK(k.quotient.edges.size() == 6);

    // Three equal legs: the terminal pair splits everything small.
    Decomposition th = decompose_q(theta(3, 3, 3), 4);
    CHECK(th.which == Decomposition::Case::separation_pair);
    CHECK(th.pair.u == 0);
    CHECK(th.pair.v == 1);
    CHECK(th.pair.components.size() == 3);

    // Subdividing one K4 edge five times exposes that edge's endpoints.
    Graph sub = make_graph(9, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3},
                               {2, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 3}});
    Decomposition s = decompose_q(sub, 4);
    CHECK(s.which == Decomposition::Case::separation_pair);
    CHECK(s.pair.u == 2);
    CHECK(s.pair.v == 3);
    CHECK(s.pair.components ==
          std::vector<std::vector<int>>{{0, 1}, {4, 5, 6, 7, 8}});
}

TEST_CASE("decompose_q contracts before deciding") {
    // A 12-cycle forces contractions; the scan then finds a balanced pair.
    Decomposition c = decompose_q(cycle(12), 4);
    CHECK(c.which == Decomposition::Case::separation_pair);
    CHECK(c.pair.u == 0);
    CHECK(c.pair.v == 3);
    CHECK(c.pair.components ==
          std::vector<std::vector<int>>{{1, 2}, {4, 5, 6, 7, 8, 9, 10, 11}});

    // Wheel rim edge subdivided once: q=4 stops at the rim pair, q=3 must
    // contract the subdivision node and ends 3-connected.
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= 9; ++i) e.emplace_back(0, i);
    for (int i = 2; i < 9; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(9, 1);
    e.emplace_back(1, 10);
    e.emplace_back(2, 10);
    Graph w = make_graph(11, std::move(e));

    Decomposition w4 = decompose_q(w, 4);
    CHECK(w4.which == Decomposition::Case::separation_pair);
    CHECK(w4.pair.u == 1);
    CHECK(w4.pair.v == 2);

    Decomposition w3 = decompose_q(w, 3);
    CHECK(w3.which == Decomposition::Case::contracted);
    CHECK(w3.quotient.nodes == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(w3.quotient.total_weight() == 1);
    bool found = false;
    for (const auto& edge : w3.quotient.edges)
        if (edge.weight() == 1) {
            found = true;
            CHECK(std::min(edge.u, edge.v) == 1);
            CHECK(std::max(edge.u, edge.v) == 2);
            CHECK(edge.interior == std::vector<int>{10});
        }
    CHECK(found);
    std::vector<int> orig_of, quot_of;
    CHECK(is_k_connected(w3.quotient.skeleton(orig_of, quot_of), 3));
}

TEST_CASE("decompose_q invariants on generated graphs") {
    for (int n : {8, 10, 12, 14, 16})
        for (unsigned long long seed : {1ULL, 2ULL, 3ULL}) {
            Instance inst = gen_random(n, 2, seed);
            const Graph& g = inst.graph;
            Decomposition d = decompose_q(g, 4);
            if (d.which == Decomposition::Case::separation_pair) {
                CHECK(d.pair.components == components_after_removal(g, {d.pair.u, d.pair.v}));
                CHECK(d.pair.components.size() >= 2);
                for (const auto& comp : d.pair.components)
                    CHECK(4 * static_cast<long long>(comp.size()) < 3LL * n);
            } else {
                std::vector<int> orig_of, quot_of;
                CHECK(is_k_connected(d.quotient.skeleton(orig_of, quot_of), 3));
                int total = d.quotient.total_weight();
                CHECK(total + static_cast<int>(d.quotient.nodes.size()) == n);
                for (const auto& edge : d.quotient.edges) {
                    CHECK(4LL * edge.weight() < n);
                    if (edge.weight() > 0) {
                        PseudoPath pp{edge.interior, edge.u, edge.v};
                        CHECK(check_pseudo_path(g, pp));
                    }
                }
            }
        }
}

TEST_CASE("decompose_q rejects bad inputs") {
    CHECK_THROWS_AS(decompose_q(k4(), 2), PreconditionError);
    CHECK_THROWS_AS(decompose_q(cycle(3), 4), PreconditionError);
    Graph path = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK_THROWS_AS(decompose_q(path, 4), PreconditionError);
}

TEST_CASE("series-parallel recognition") {
    CHECK(is_series_parallel(theta(1, 1, 1)));
    CHECK(is_series_parallel(cycle(6)));
    CHECK(is_series_parallel(make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}})));
    CHECK(is_series_parallel(make_graph(4, {{0, 1}, {1, 2}, {2, 3}}))); // bare path
    CHECK(is_series_parallel(gen_fig1(1, 0).graph));
    CHECK(is_series_parallel(gen_fig1(2, 1).graph));

    CHECK_FALSE(is_series_parallel(k4()));
    CHECK_FALSE(is_series_parallel(wheel(5)));
    CHECK_FALSE(is_series_parallel(prism()));
    CHECK_FALSE(is_series_parallel(octahedron()));
    CHECK_FALSE(is_series_parallel(make_graph(4, {{0, 1}, {2, 3}})));
}

TEST_CASE("series-parallel derivation walk") {
    SeparationPair th = series_parallel_separation_pair(theta(1, 1, 1));
    CHECK(th.u == 0);
    CHECK(th.v == 1);
    CHECK(th.components == std::vector<std::vector<int>>{{2}, {3}, {4}});

    SeparationPair f = series_parallel_separation_pair(gen_fig1(1, 0).graph);
    CHECK(f.u == 0);
    CHECK(f.v == 1);
    CHECK(f.components.size() == 3);
    for (const auto& comp : f.components) CHECK(comp.size() == 2);

    SeparationPair c6 = series_parallel_separation_pair(cycle(6));
    CHECK(c6.u == 2);
    CHECK(c6.v == 5);
    CHECK(c6.components == std::vector<std::vector<int>>{{0, 1}, {3, 4}});

    for (int s : {1, 2})
        for (int t : {0, 1}) {
            Graph g = gen_fig1(s, t).graph;
            SeparationPair pair = series_parallel_separation_pair(g);
            long long n = g.n;
            std::size_t covered = 2;
            for (const auto& comp : pair.components) {
                CHECK(3LL * static_cast<long long>(comp.size()) < 2 * n);
                covered += comp.size();
            }
            CHECK(covered == static_cast<std::size_t>(g.n));
        }

    CHECK_THROWS_AS(series_parallel_separation_pair(k4()), PreconditionError);
    Graph path = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK_THROWS_AS(series_parallel_separation_pair(path), PreconditionError);
}
