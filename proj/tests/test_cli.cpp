#include <gridcleave/graph.hpp>
#include <gridcleave/io.hpp>
#include <gridcleave/rational.hpp>

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace gridcleave;
using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

// Runs a shell command; stderr is folded into stdout so error-path tests
// can look at the message.
RunResult run_shell(const std::string& cmd) {
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

RunResult run_cli(const std::string& args) {
    return run_shell(std::string(GRIDCLEAVE_CLI_PATH) + " " + args);
}

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("gridcleave_cli_" + name);
}

std::string write_scratch(const std::string& name, const std::string& body) {
    auto p = scratch(name);
    std::ofstream f(p);
    f << body;
    return p.string();
}

const char* kK4 = R"({"nodes":[{"id":0,"p":"1"},{"id":1,"p":"-1"},{"id":2,"p":"1"},
{"id":3,"p":"-1"}],"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]})";

int count_occurrences(const std::string& hay, const std::string& needle) {
    int c = 0;
    for (std::size_t at = hay.find(needle); at != std::string::npos;
         at = hay.find(needle, at + needle.size()))
        ++c;
    return c;
}

} // namespace

TEST_CASE("partition solves a balanced K4 through the half-split path") {
    std::string in = write_scratch("k4.json", kK4);
    RunResult r = run_cli("partition " + in);
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc.at("p") == json::array({"0", "0"}));
    CHECK(doc.at("sizes") == json::array({2, 2}));
    CHECK(doc.at("trace").get<std::string>().find("sweep_zero") != std::string::npos);
}

TEST_CASE("partition rejects a tree citing the connectivity requirement") {
    std::string in = write_scratch("path.el", "0 1\n1 2\n2 3\n");
    RunResult r = run_cli("partition " + in + " --format edgelist --mode dbcp");
    CHECK(r.code == 3);
    CHECK(r.out.find("2-connected") != std::string::npos);
}

TEST_CASE("partition output is byte-identical across repeat runs") {
    RunResult gen = run_cli("gen random2 --n 12 --seed 3 --out " + scratch("det.json").string());
    REQUIRE(gen.code == 0);
    RunResult a = run_cli("partition " + scratch("det.json").string() + " --seed 9");
    RunResult b = run_cli("partition " + scratch("det.json").string() + " --seed 9");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("partition honors bcpi mode with explicit anchor nodes") {
    std::string in = write_scratch(
        "c4w.json", R"({"nodes":[{"id":0,"p":"-4"},{"id":1,"p":"-2"},{"id":2,"p":"4"},
{"id":3,"p":"2"}],"edges":[[0,1],[1,2],[2,3],[0,3]]})");
    RunResult r = run_cli("partition " + in + " --mode bcpi2 --node 2 --node 3");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    Rat s1 = rat_from_string(doc.at("p")[0].get<std::string>());
    Rat s2 = rat_from_string(doc.at("p")[1].get<std::string>());
    CHECK(rat_abs(s1) == 2);
    CHECK(rat_abs(s2) == 2);
}

TEST_CASE("partition centers arbitrary weights when asked") {
    std::string in = write_scratch(
        "c8ones.json",
        R"({"nodes":[{"id":0,"p":"1"},{"id":1,"p":"1"},{"id":2,"p":"1"},{"id":3,"p":"1"},
{"id":4,"p":"1"},{"id":5,"p":"1"},{"id":6,"p":"1"},{"id":7,"p":"1"}],
"edges":[[0,1],[1,2],[2,3],[3,4],[4,5],[5,6],[6,7],[0,7]]})");
    RunResult r = run_cli("partition " + in + " --centered");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    Rat s1 = rat_from_string(doc.at("p")[0].get<std::string>());
    Rat s2 = rat_from_string(doc.at("p")[1].get<std::string>());
    CHECK(s1 + s2 == 8);
    CHECK(rat_abs(s1 - 4) <= 1);
    CHECK(rat_abs(s2 - 4) <= 1);
}

TEST_CASE("embed renders K4 as four circles and six segments") {
    std::string in = write_scratch("k4.json", kK4);
    RunResult plain = run_cli("embed " + in);
    REQUIRE(plain.code == 0);
    CHECK(count_occurrences(plain.out, "<circle") == 4);
    CHECK(count_occurrences(plain.out, "<line") == 6);

    RunResult colored = run_cli("embed " + in + " --with-partition");
    REQUIRE(colored.code == 0);
    CHECK(colored.out.find("#3c78b4") != std::string::npos);
    CHECK(colored.out.find("#d1495b") != std::string::npos);
}

TEST_CASE("oracle emits the frontier and answers feasibility checks") {
    std::string in = write_scratch("k4.json", kK4);
    RunResult r = run_cli("oracle " + in);
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    bool perfect = false;
    for (const auto& f : doc.at("frontier"))
        if (f.at("imbalance") == "0" && f.at("ratio") == "1") perfect = true;
    CHECK(perfect);

    RunResult gen = run_cli("gen fig1 --s 1 --t 0 --out " + scratch("fig1.json").string());
    REQUIRE(gen.code == 0);
    RunResult chk = run_cli("oracle " + scratch("fig1.json").string() + " --check 0 1");
    REQUIRE(chk.code == 0);
    CHECK(json::parse(chk.out).at("admits") == false);
}

TEST_CASE("oracle cap ceiling honors flag and environment overrides") {
    RunResult gen = run_cli("gen random2 --n 20 --seed 2 --out " + scratch("n20.json").string());
    REQUIRE(gen.code == 0);
    std::string in = scratch("n20.json").string();
    CHECK(run_cli("oracle " + in).code == 4);
    CHECK(run_cli("oracle " + in + " --cap 20").code == 0);
    CHECK(run_shell("GRIDCLEAVE_CAP=20 " + std::string(GRIDCLEAVE_CLI_PATH) + " oracle " + in)
              .code == 0);
    CHECK(run_shell("GRIDCLEAVE_CAP=bogus " + std::string(GRIDCLEAVE_CLI_PATH) + " oracle " + in)
              .code == 2);
    CHECK(run_cli("oracle " + in + " --cap 8").code == 4);
}

TEST_CASE("gen output round-trips through the parser and the solver") {
    RunResult fig = run_cli("gen fig1 --s 1 --t 0");
    REQUIRE(fig.code == 0);
    std::istringstream fig_in(fig.out);
    Instance inst = read_instance_json(fig_in);
    CHECK(inst.graph.n == 8);
    CHECK(inst.weights.total == 0);

    RunResult r3 = run_cli("gen random3 --n 8 --seed 1");
    REQUIRE(r3.code == 0);
    std::istringstream r3_in(r3.out);
    Instance random3 = read_instance_json(r3_in);
    CHECK(is_k_connected(random3.graph, 3));
    CHECK(random3.weights.total == 0);
    CHECK(run_cli("gen random3 --n 8 --seed 1").out == r3.out);

    RunResult piped =
        run_shell(std::string(GRIDCLEAVE_CLI_PATH) + " gen random2 --n 10 --seed 4 | " +
                  std::string(GRIDCLEAVE_CLI_PATH) + " partition -");
    CHECK(piped.code == 0);
    CHECK(json::parse(piped.out).contains("V1"));
}

TEST_CASE("malformed inputs and flags map to the parse exit code") {
    std::string bad = write_scratch("bad.json", "{\"nodes\":[");
    CHECK(run_cli("partition " + bad).code == 2);
    CHECK(run_cli("gen fig1 --s 0").code == 2);
    CHECK(run_cli("gen mystery").code == 2);
    CHECK(run_cli("partition " + bad + " --mode nonsense").code == 2);
    CHECK(run_cli("partition --no-such-flag").code == 2);
}

TEST_CASE("edge list input with a companion weight file solves end to end") {
    std::string g = write_scratch("c6.el", "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");
    std::string w = write_scratch("c6.w", "0 1\n1 -1\n2 1\n3 -1\n4 1\n5 -1\n");
    RunResult r = run_cli("partition " + g + " --format edgelist --weights " + w);
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc.at("p") == json::array({"0", "0"}));
}

TEST_CASE("out flag writes the same bytes the terminal would get") {
    std::string in = write_scratch("k4.json", kK4);
    std::string dst = scratch("k4.out.json").string();
    RunResult direct = run_cli("partition " + in);
    RunResult filed = run_cli("partition " + in + " --out " + dst);
    REQUIRE(filed.code == 0);
    CHECK(filed.out.empty());
    std::ifstream f(dst);
    std::stringstream body;
    body << f.rdbuf();
    CHECK(body.str() == direct.out);
}
