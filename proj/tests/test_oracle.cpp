#include <doctest.h>

#include <gridcleave/errors.hpp>
#include <gridcleave/oracle.hpp>

#include <algorithm>
#include <cstdint>
#include <set>

using namespace gridcleave;

namespace {

Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return make_graph(n, e);
}

Graph k4() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

Graph wheel(int rim) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < rim; ++i) {
        e.emplace_back(i, (i + 1) % rim);
        e.emplace_back(i, rim);
    }
    return make_graph(rim + 1, e);
}

WeightAssignment pm1(std::vector<int> signs) {
    std::vector<Rat> v;
    for (int s : signs) v.emplace_back(s);
    return make_weights(v);
}

// Independent counter: walk all subsets containing node 0, test both
// sides with the plain reachability check.
int naive_partition_count(const Graph& g) {
    int count = 0;
    for (std::uint64_t set = 1; set < (1ull << g.n); set += 2) {
        std::vector<int> a, b;
        for (int v = 0; v < g.n; ++v) ((set >> v) & 1 ? a : b).push_back(v);
        if (b.empty()) continue;
        if (connected_induced(g, a) && connected_induced(g, b)) ++count;
    }
    return count;
}

} // namespace

TEST_CASE("enumeration counts on hand-checked graphs") {
    CHECK(enumerate_connected_partitions(cycle(3)).size() == 3);
    // 4-cycle: four singleton splits plus the two distinct adjacent-pair
    // splits {01|23} and {12|30}.
    CHECK(enumerate_connected_partitions(cycle(4)).size() == 6);
    // K4: four singleton splits plus three pair splits.
    CHECK(enumerate_connected_partitions(k4()).size() == 7);
    // Path 0-1-2: only the two edge cuts.
    CHECK(enumerate_connected_partitions(make_graph(3, {{0, 1}, {1, 2}})).size() == 2);
}

TEST_CASE("enumeration is canonical and exact") {
    auto parts = enumerate_connected_partitions(cycle(5));
    std::set<std::vector<int>> firsts;
    for (const auto& [a, b] : parts) {
        CHECK(std::find(a.begin(), a.end(), 0) != a.end());
        CHECK(connected_induced(cycle(5), a));
        CHECK(connected_induced(cycle(5), b));
        CHECK(a.size() + b.size() == 5);
        CHECK(firsts.insert(a).second); // no duplicates
    }
}

TEST_CASE("enumeration matches the independent counter up to n = 8") {
    std::vector<Graph> graphs;
    for (int n = 3; n <= 8; ++n) graphs.push_back(cycle(n));
    graphs.push_back(k4());
    graphs.push_back(wheel(5));
    graphs.push_back(wheel(7));
    graphs.push_back(make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}));
    graphs.push_back(make_graph(4, {{0, 1}, {2, 3}}));
    for (int seed = 1; seed <= 4; ++seed) {
        graphs.push_back(gen_random(8, 2, seed).graph);
        graphs.push_back(gen_random(8, 3, seed).graph);
    }
    for (const auto& g : graphs)
        CHECK(static_cast<int>(enumerate_connected_partitions(g).size()) ==
              naive_partition_count(g));
}

TEST_CASE("enumeration cap") {
    Graph big = cycle(20);
    CHECK_THROWS_AS(enumerate_connected_partitions(big), CapExceededError);
    CHECK(enumerate_connected_partitions(big, 20).size() == 20 * 19 / 2);
    // A cap beyond the 64-bit mask clamps rather than overflowing.
    CHECK_THROWS_AS(for_each_connected_partition(make_graph(65, {}), 100,
                                                 [](const auto&, const auto&) {}),
                    CapExceededError);
}

TEST_CASE("verify_partition clauses") {
    Graph g = k4();
    auto p = pm1({1, -1, 1, -1});
    Partition zero = make_partition(g, p, {{0, 1}, {2, 3}});
    CHECK(verify_partition(g, p, zero, Rat(0), Rat(1), false));
    // Bound is inclusive on the ratio side.
    Partition skew = make_partition(g, p, {{0}, {1, 2, 3}});
    CHECK(verify_partition(g, p, skew, Rat(1), Rat(3), false));
    CHECK_FALSE(verify_partition(g, p, skew, Rat(1), Rat(2), false));
    CHECK_FALSE(verify_partition(g, p, skew, Rat(0), Rat(3), false));

    Graph c4 = cycle(4);
    Partition disc = make_partition(c4, p, {{0, 2}, {1, 3}});
    CHECK_FALSE(verify_partition(c4, p, disc, Rat(10), Rat(10), false));

    Partition malformed;
    malformed.parts = {{0, 1}, {1, 2, 3}};
    CHECK_THROWS_AS(verify_partition(g, p, malformed, Rat(1), Rat(1), false),
                    PreconditionError);

    // Centered variant measures distance from p(V)/2.
    auto all_plus = pm1({1, 1, 1, 1});
    Partition halves = make_partition(g, all_plus, {{0, 1}, {2, 3}});
    CHECK(verify_partition(g, all_plus, halves, Rat(0), Rat(1), true));
    CHECK_FALSE(verify_partition(g, all_plus, halves, Rat(0), Rat(1), false));
}

TEST_CASE("best_frontier on K4") {
    auto frontier = best_frontier(k4(), pm1({1, -1, 1, -1}), false);
    REQUIRE(frontier.size() == 1); // (0,1) dominates everything
    CHECK(frontier[0].imbalance == 0);
    CHECK(frontier[0].ratio == 1);
    CHECK(verify_partition(k4(), pm1({1, -1, 1, -1}), frontier[0].witness, Rat(0), Rat(1),
                           false));
}

TEST_CASE("best_frontier is an antichain") {
    auto inst = gen_random(10, 2, 42);
    auto frontier = best_frontier(inst.graph, inst.weights, false);
    REQUIRE(!frontier.empty());
    for (std::size_t i = 0; i < frontier.size(); ++i)
        for (std::size_t j = 0; j < frontier.size(); ++j) {
            if (i == j) continue;
            bool dominates = frontier[i].imbalance <= frontier[j].imbalance &&
                             frontier[i].ratio <= frontier[j].ratio;
            CHECK_FALSE(dominates);
        }
    for (std::size_t i = 1; i < frontier.size(); ++i) {
        CHECK(frontier[i - 1].imbalance < frontier[i].imbalance);
        CHECK(frontier[i - 1].ratio > frontier[i].ratio);
    }
}

TEST_CASE("gen_fig1 structure and weights") {
    auto [g, p] = gen_fig1(1, 0);
    CHECK(g.n == 8); // 2 terminals + 3 paths of 2 interior nodes
    CHECK(g.m() == 9);
    CHECK(g.adj[0].size() == 3);
    CHECK(g.adj[1].size() == 3);
    CHECK(p.total == 0);
    CHECK(is_pm1(p));

    auto [g2, p2] = gen_fig1(2, 1);
    CHECK(g2.n == 2 + 5 * 6);
    CHECK(p2.total == 0);
    CHECK(is_pm1(p2));
    CHECK(is_k_connected(g2, 2));
    CHECK_FALSE(is_k_connected(g2, 3));

    CHECK_THROWS_AS(gen_fig1(0, 0), PreconditionError);
}

TEST_CASE("gen_fig1 pins the ratio floor at t = 0") {
    auto [g, p] = gen_fig1(1, 0);
    auto frontier = best_frontier(g, p, false);
    Rat floor = Rat(g.n) / 2 - 1;
    bool zero_at_floor = false;
    for (const auto& f : frontier) {
        if (f.imbalance == 0) {
            CHECK(f.ratio >= floor);
            zero_at_floor = zero_at_floor || f.ratio == floor;
        }
    }
    CHECK(zero_at_floor);
}

TEST_CASE("gen_fig1 pins the imbalance floor at s = 1") {
    auto [g, p] = gen_fig1(1, 1);
    Rat floor = Rat(g.n) / 6;
    Rat best_equal = Rat(g.n); // large
    for_each_connected_partition(g, 20, [&](const std::vector<int>& a,
                                            const std::vector<int>& b) {
        if (a.size() != b.size()) return;
        Rat im = rat_abs(weight_sum(p, a));
        if (im < best_equal) best_equal = im;
    });
    CHECK(best_equal >= floor);
}

TEST_CASE("gen_random determinism and contracts") {
    for (int n : {6, 8, 10, 12}) {
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            for (int level : {2, 3}) {
                auto a = gen_random(n, level, seed);
                auto b = gen_random(n, level, seed);
                CHECK(a.graph.edges == b.graph.edges);
                CHECK(a.weights.value == b.weights.value);
                auto d = validate_instance(a.graph, a.weights, WeightRegime::pm1);
                CHECK(d.regime_ok);
                CHECK(d.connectivity >= level);
                CHECK(a.weights.total == 0);
            }
        }
    }
    CHECK_THROWS_AS(gen_random(7, 2, 1), PreconditionError);
    CHECK_THROWS_AS(gen_random(6, 4, 1), PreconditionError);
}
