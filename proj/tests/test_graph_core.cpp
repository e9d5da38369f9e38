#include <doctest.h>

#include <gridcleave/errors.hpp>
#include <gridcleave/graph.hpp>
#include <gridcleave/io.hpp>

#include <sstream>

using namespace gridcleave;

namespace {

Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return make_graph(n, e);
}

Graph k4() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

Graph wheel(int rim) { // hub = rim index `rim`
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < rim; ++i) {
        e.emplace_back(i, (i + 1) % rim);
        e.emplace_back(i, rim);
    }
    return make_graph(rim + 1, e);
}

// Two terminals 0,1 joined by three paths with one interior node each.
Graph theta5() { return make_graph(5, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 1}}); }

WeightAssignment pm1(std::vector<int> signs) {
    std::vector<Rat> v;
    for (int s : signs) v.emplace_back(s);
    return make_weights(v);
}

} // namespace

TEST_CASE("make_graph validates and canonicalizes") {
    Graph g = make_graph(3, {{2, 0}, {1, 2}, {0, 1}});
    CHECK(g.n == 3);
    CHECK(g.m() == 3);
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(g.adj[2] == std::vector<int>{0, 1});
    CHECK(g.has_edge(2, 0));
    CHECK_FALSE(g.has_edge(0, 0));

    CHECK_THROWS_AS(make_graph(2, {{0, 0}}), PreconditionError);
    CHECK_THROWS_AS(make_graph(2, {{0, 1}, {1, 0}}), PreconditionError);
    CHECK_THROWS_AS(make_graph(2, {{0, 2}}), PreconditionError);
    CHECK_THROWS_AS(make_graph(-1, {}), PreconditionError);
}

TEST_CASE("connectivity queries") {
    CHECK(is_connected(cycle(5)));
    CHECK_FALSE(is_connected(make_graph(4, {{0, 1}, {2, 3}})));
    CHECK(connected_induced(cycle(5), {0, 1, 2}));
    CHECK_FALSE(connected_induced(cycle(5), {0, 2}));
    CHECK(connected_induced(cycle(5), {3}));
    CHECK(connected_induced(cycle(5), {}));

    auto comps = components_after_removal(cycle(6), {0, 3});
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<int>{1, 2});
    CHECK(comps[1] == std::vector<int>{4, 5});
}

TEST_CASE("k-connectivity levels") {
    CHECK(is_k_connected(k4(), 1));
    CHECK(is_k_connected(k4(), 2));
    CHECK(is_k_connected(k4(), 3));
    CHECK(is_k_connected(cycle(3), 2));
    CHECK_FALSE(is_k_connected(cycle(3), 3)); // needs more than 3 nodes
    CHECK(is_k_connected(cycle(6), 2));
    CHECK_FALSE(is_k_connected(cycle(6), 3));
    CHECK(is_k_connected(wheel(5), 3));
    Graph path = make_graph(3, {{0, 1}, {1, 2}});
    CHECK(is_k_connected(path, 1));
    CHECK_FALSE(is_k_connected(path, 2));
    CHECK_THROWS_AS(is_k_connected(path, 4), PreconditionError);
}

TEST_CASE("separation pairs") {
    auto pairs = find_separation_pairs(cycle(4));
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].u == 0);
    CHECK(pairs[0].v == 2);
    CHECK(pairs[1].u == 1);
    CHECK(pairs[1].v == 3);

    auto tp = find_separation_pairs(theta5());
    REQUIRE(tp.size() == 1);
    CHECK(tp[0].u == 0);
    CHECK(tp[0].v == 1);
    REQUIRE(tp[0].components.size() == 3);
    CHECK(tp[0].components[0] == std::vector<int>{2});

    CHECK(find_separation_pairs(k4()).empty());
}

TEST_CASE("weights and partitions") {
    auto p = pm1({1, -1, 1, -1});
    CHECK(p.total == 0);
    CHECK(is_pm1(p));
    CHECK(max_abs_weight(p) == 1);
    CHECK(weight_sum(p, {0, 2}) == 2);

    auto q = make_weights({Rat(-4), Rat(-2), Rat(4), Rat(2)});
    CHECK_FALSE(is_pm1(q));
    CHECK(max_abs_weight(q) == 4);

    Graph g = cycle(4);
    Partition part = make_partition(g, p, {{0, 1}, {2, 3}});
    CHECK(part.sums[0] == 0);
    CHECK(part.sizes == std::vector<int>{2, 2});
    CHECK_THROWS_AS(make_partition(g, p, {{0, 1}, {1, 2, 3}}), PreconditionError);
    CHECK_THROWS_AS(make_partition(g, p, {{0, 1}, {2}}), PreconditionError);
}

TEST_CASE("instance diagnostics") {
    auto d = validate_instance(k4(), pm1({1, 1, -1, -1}), WeightRegime::pm1);
    CHECK(d.connectivity == 3);
    CHECK(d.total == 0);
    CHECK(d.pm1);
    CHECK(d.n_mod_4 == 0);
    CHECK(d.regime_ok);

    auto d2 = validate_instance(cycle(6), pm1({1, 1, 1, -1, -1, -1}), WeightRegime::pm1);
    CHECK(d2.connectivity == 2);
    CHECK(d2.n_mod_4 == 2);
    CHECK(d2.regime_ok);

    auto d3 = validate_instance(cycle(4), make_weights({Rat(2), Rat(0), Rat(-1), Rat(-1)}),
                                WeightRegime::pm1);
    CHECK_FALSE(d3.regime_ok);
    CHECK(validate_instance(cycle(4), make_weights({Rat(2), Rat(0), Rat(-1), Rat(-1)}),
                            WeightRegime::general)
              .regime_ok);
    CHECK_THROWS_AS(validate_instance(cycle(4), pm1({1, -1}), WeightRegime::pm1),
                    PreconditionError);
}

TEST_CASE("rational strings") {
    CHECK(rat_to_string(Rat(5)) == "5");
    CHECK(rat_to_string(Rat(-5, 10)) == "-1/2");
    CHECK(rat_from_string("7") == 7);
    CHECK(rat_from_string("-3/6") == Rat(-1, 2));
    CHECK(rat_from_string("+4/2") == 2);
    CHECK_THROWS_AS(rat_from_string(""), ParseError);
    CHECK_THROWS_AS(rat_from_string("1/0"), ParseError);
    CHECK_THROWS_AS(rat_from_string("a/b"), ParseError);
    CHECK_THROWS_AS(rat_from_string("1.5"), ParseError);
}

TEST_CASE("instance JSON round trip") {
    Instance inst{k4(), pm1({1, 1, -1, -1})};
    std::string text = write_instance_json(inst);
    std::istringstream in(text);
    Instance back = read_instance_json(in);
    CHECK(back.graph.n == 4);
    CHECK(back.graph.edges == inst.graph.edges);
    CHECK(back.weights.value == inst.weights.value);
    CHECK(write_instance_json(back) == text);
}

TEST_CASE("instance JSON rejects malformed documents") {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return read_instance_json(in);
    };
    CHECK_THROWS_AS(parse("not json"), ParseError);
    CHECK_THROWS_AS(parse("{}"), ParseError);
    CHECK_THROWS_AS(parse(R"({"nodes":[{"id":0},{"id":0}],"edges":[]})"), PreconditionError);
    CHECK_THROWS_AS(parse(R"({"nodes":[{"id":0},{"id":2}],"edges":[]})"), PreconditionError);
    CHECK_THROWS_AS(parse(R"({"nodes":[{"id":0,"p":1.5}],"edges":[]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"nodes":[{"id":0},{"id":1}],"edges":[[0,0]]})"),
                    PreconditionError);
    // Integer and string weights both accepted.
    Instance ok = parse(R"({"nodes":[{"id":0,"p":-2},{"id":1,"p":"1/3"}],"edges":[[0,1]]})");
    CHECK(ok.weights[0] == -2);
    CHECK(ok.weights[1] == Rat(1, 3));
}

TEST_CASE("edge list and weight list") {
    std::istringstream edges("0 1\n1 2 # comment\n\n# full comment line\n2 0\n");
    Graph g = read_edge_list(edges);
    CHECK(g.n == 3);
    CHECK(g.m() == 3);
    std::istringstream weights("0 1\n1 -1/2\n");
    auto p = read_weight_list(weights, g.n);
    CHECK(p.value == std::vector<Rat>{Rat(1), Rat(-1, 2), Rat(0)});

    std::istringstream bad("0 1 2\n");
    CHECK_THROWS_AS(read_edge_list(bad), ParseError);
    std::istringstream badw("5 1\n");
    CHECK_THROWS_AS(read_weight_list(badw, 3), PreconditionError);
}

TEST_CASE("partition document round trip") {
    Graph g = cycle(4);
    auto p = pm1({1, -1, 1, -1});
    PartitionDocument doc;
    doc.partition = make_partition(g, p, {{0, 1}, {2, 3}});
    doc.trace = "theorem-1/triangle";
    doc.seed = 7;
    std::string text = write_partition_json(doc);
    std::istringstream in(text);
    PartitionDocument back = read_partition_json(in, g, p);
    CHECK(back.partition.parts == doc.partition.parts);
    CHECK(back.trace == doc.trace);
    CHECK(back.seed == 7);

    std::istringstream tampered(
        R"({"V1":[0,1],"V2":[2,3],"p":["2","-2"],"sizes":[2,2]})");
    CHECK_THROWS_AS(read_partition_json(tampered, g, p), PreconditionError);
    std::istringstream incomplete(R"({"V1":[0,1]})");
    CHECK_THROWS_AS(read_partition_json(incomplete, g, p), ParseError);
}
