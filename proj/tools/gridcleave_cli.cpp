#include <gridcleave/bcpi.hpp>
#include <gridcleave/dbcp.hpp>
#include <gridcleave/embedding.hpp>
#include <gridcleave/errors.hpp>
#include <gridcleave/io.hpp>
#include <gridcleave/oracle.hpp>
#include <gridcleave/structure.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace gridcleave;
using nlohmann::json;

namespace {

struct InputOptions {
    std::string path;
    std::string format = "json";
    std::string weights_path;
};

struct OutputOptions {
    std::string path;
};

void add_input_flags(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("input", in.path, "instance file, '-' for stdin")->required();
    cmd->add_option("--format", in.format, "input format")
        ->check(CLI::IsMember({"json", "edgelist"}));
    cmd->add_option("--weights", in.weights_path,
                    "companion 'id value' weight file (edgelist format only)");
}

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--out", out.path, "write output here instead of stdout");
}

Instance load_instance(const InputOptions& in) {
    std::ifstream file;
    std::istream* src = &std::cin;
    if (in.path != "-") {
        file.open(in.path);
        if (!file) throw ParseError("cannot open " + in.path);
        src = &file;
    }
    if (in.format == "json") return read_instance_json(*src);
    Graph g = read_edge_list(*src);
    WeightAssignment p;
    if (!in.weights_path.empty()) {
        std::ifstream wf(in.weights_path);
        if (!wf) throw ParseError("cannot open " + in.weights_path);
        p = read_weight_list(wf, g.n);
    } else {
        p = make_weights(std::vector<Rat>(g.n, Rat(0)));
    }
    return Instance{std::move(g), std::move(p)};
}

void emit(const OutputOptions& out, const std::string& body) {
    if (out.path.empty()) {
        std::cout << body;
        if (body.empty() || body.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream file(out.path);
    if (!file) throw ParseError("cannot open " + out.path + " for writing");
    file << body;
    if (body.empty() || body.back() != '\n') file << '\n';
}

int resolve_cap(const std::optional<int>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("GRIDCLEAVE_CAP")) {
        try {
            std::size_t used = 0;
            int v = std::stoi(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ParseError("GRIDCLEAVE_CAP must be an integer");
        }
    }
    return kDefaultEnumerationCap;
}

std::string join_trace(const std::vector<std::string>& trace) {
    std::string out;
    for (const auto& t : trace) {
        if (!out.empty()) out += '/';
        out += t;
    }
    return out;
}

bool exact_regime(const WeightAssignment& p) { return is_pm1(p) && p.total == 0; }

// Theorem bound for the route taken; a result that fails its own bound is
// a solver bug, so the guard throws InternalError rather than printing.
void gate(const Graph& g, const WeightAssignment& p, const Partition& part, const Rat& c_p,
          const Rat& c_s, bool centered) {
    if (!verify_partition(g, p, part, c_p, c_s, centered))
        throw InternalError("result failed its own theorem bound before printing");
}

PartitionDocument run_dbcp(const Graph& g, const WeightAssignment& p, int q,
                           unsigned long long seed, bool centered) {
    if (centered || !exact_regime(p)) {
        if (is_k_connected(g, 3)) {
            DbcpResult r = dbcp_3_general(g, p, seed);
            gate(g, p, r.partition, max_abs_weight(p),
                 Rat(g.n / 2 + g.n % 2) / Rat(g.n - g.n / 2 - g.n % 2), true);
            return {std::move(r.partition), join_trace(r.trace), r.seed};
        }
        if (g.n >= 4 && is_k_connected(g, 2)) {
            DbcpResult r = dbcp_2_general(g, p, seed);
            gate(g, p, r.partition, max_abs_weight(p), Rat(3), true);
            return {std::move(r.partition), join_trace(r.trace), r.seed};
        }
        throw PreconditionError("partitioning requires a 2-connected graph");
    }
    if (is_k_connected(g, 3)) {
        DbcpResult r = dbcp_3(g, p, seed);
        Rat cs = g.n % 4 == 0 ? Rat(1) : Rat(g.n + 2) / Rat(g.n - 2);
        gate(g, p, r.partition, Rat(0), cs, false);
        return {std::move(r.partition), join_trace(r.trace), r.seed};
    }
    if (g.n >= 4 && is_k_connected(g, 2)) {
        // A non-default q steers the explicit separation-pair route; the
        // contracted route is tied to quarters, so Case2 falls back to it.
        if (q != 4) {
            Decomposition d = decompose_q(g, q);
            if (d.which == Decomposition::Case::separation_pair) {
                DbcpResult r = dbcp_sep_case(g, p, q, d.pair);
                gate(g, p, r.partition, Rat(1), Rat(q - 1), false);
                return {std::move(r.partition), join_trace(r.trace), r.seed};
            }
        }
        DbcpResult r = dbcp_2(g, p, seed);
        gate(g, p, r.partition, Rat(1), Rat(3), false);
        return {std::move(r.partition), join_trace(r.trace), r.seed};
    }
    throw PreconditionError("partitioning requires a 2-connected graph");
}

// Anchor nodes for the bcpi modes: explicit flags win, otherwise the
// smallest same-sign pair or triple found in the weights.
std::vector<int> resolve_anchors(const WeightAssignment& p, const std::vector<int>& flags,
                                 std::size_t want) {
    if (!flags.empty()) {
        if (flags.size() != want)
            throw ParseError("expected " + std::to_string(want) + " anchor nodes");
        return flags;
    }
    std::vector<int> triple = find_same_sign_triple(p);
    if (want == 3) {
        if (triple.empty())
            throw PreconditionError("no same-sign node triple exists in the weights");
        return triple;
    }
    if (triple.size() >= 2) return {triple[0], triple[1]};
    for (int i = 0; i < static_cast<int>(p.value.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(p.value.size()); ++j) {
            Rat prod = p[i] * p[j];
            if (prod > 0) return {i, j};
        }
    throw PreconditionError("no same-sign node pair exists in the weights");
}

PartitionDocument run_partition(const Instance& inst, const std::string& mode, int q,
                                unsigned long long seed, bool centered,
                                const std::vector<int>& anchors) {
    const Graph& g = inst.graph;
    const WeightAssignment& p = inst.weights;
    if (mode == "bcpi2") {
        std::vector<int> uv = resolve_anchors(p, anchors, 2);
        Bcpi2Result r = bcpi_2(g, p, uv[0], uv[1]);
        Rat half = max_abs_weight(p) / 2;
        gate(g, p, r.partition, half, Rat(std::max(g.n - 1, 1)), false);
        return {std::move(r.partition), join_trace(r.trace), 0};
    }
    if (mode == "bcpi3") {
        std::vector<int> uvw = resolve_anchors(p, anchors, 3);
        Bcpi3Result r = bcpi_3(g, p, uvw[0], uvw[1], uvw[2]);
        gate(g, p, r.partition, max_abs_weight(p), Rat(std::max(g.n - 2, 1)), false);
        return {std::move(r.partition), join_trace(r.trace), 0};
    }
    return run_dbcp(g, p, q, seed, centered);
}

int cmd_partition(const InputOptions& in, const OutputOptions& out, const std::string& mode,
                  int q, unsigned long long seed, bool centered,
                  const std::vector<int>& anchors) {
    Instance inst = load_instance(in);
    PartitionDocument doc = run_partition(inst, mode, q, seed, centered, anchors);
    emit(out, write_partition_json(doc));
    return 0;
}

int cmd_embed(const InputOptions& in, const OutputOptions& out, bool with_partition,
              unsigned long long seed, bool guides) {
    Instance inst = load_instance(in);
    const Graph& g = inst.graph;
    Embedding emb;
    if (g.n >= 4 && is_k_connected(g, 3)) {
        emb = general_position_embedding(g, {0, 1, 2}, seed).emb;
    } else if (g.n >= 4 && is_k_connected(g, 2)) {
        Decomposition d = decompose_q(g, 4);
        if (d.which != Decomposition::Case::contracted)
            throw PreconditionError(
                "embedding needs a 3-connected graph or a 3-connected quotient");
        std::vector<int> orig_of, quot_of;
        Graph skel = d.quotient.skeleton(orig_of, quot_of);
        Embedding base = general_position_embedding(skel, {0, 1, 2}, seed).emb;
        emb.point.assign(g.n, Point{Rat(0), Rat(0)});
        for (int qi = 0; qi < skel.n; ++qi) emb.point[orig_of[qi]] = base.point[qi];
        for (const auto& e : d.quotient.edges) {
            Point a = base.point[quot_of[e.u]], b = base.point[quot_of[e.v]];
            int total = static_cast<int>(e.interior.size());
            for (int i = 0; i < total; ++i) {
                Rat lam = Rat(i + 1) / Rat(total + 1);
                emb.point[e.interior[i]] = {a.first + lam * (b.first - a.first),
                                            a.second + lam * (b.second - a.second)};
            }
        }
        emb.anchors = base.anchors;
        for (int& a : emb.anchors) a = orig_of[a];
    } else {
        throw PreconditionError("embedding needs a 3-connected graph or a 3-connected quotient");
    }
    Partition part;
    const Partition* overlay = nullptr;
    if (with_partition) {
        PartitionDocument doc = run_partition(inst, "auto", 4, seed, false, {});
        part = std::move(doc.partition);
        overlay = &part;
    }
    emit(out, render_svg(g, emb, overlay, guides));
    return 0;
}

int cmd_oracle(const InputOptions& in, const OutputOptions& out, const std::optional<int>& cap,
               bool centered, const std::vector<std::string>& check) {
    Instance inst = load_instance(in);
    int limit = resolve_cap(cap);
    std::vector<FrontierPoint> frontier = best_frontier(inst.graph, inst.weights, centered, limit);
    json arr = json::array();
    for (const auto& f : frontier)
        arr.push_back({{"imbalance", rat_to_string(f.imbalance)}, {"ratio", rat_to_string(f.ratio)}});
    json doc;
    doc["frontier"] = arr;
    if (!check.empty()) {
        Rat cp = rat_from_string(check[0]), cs = rat_from_string(check[1]);
        doc["admits"] = frontier_admits(frontier, cp, cs);
    }
    emit(out, doc.dump());
    return 0;
}

int cmd_gen(const std::string& kind, int s, int t, int n, unsigned long long seed,
            const OutputOptions& out) {
    Instance inst;
    if (kind == "fig1") {
        if (s < 1 || t < 0) throw ParseError("fig1 needs s >= 1 and t >= 0");
        inst = gen_fig1(s, t);
    } else if (kind == "random2" || kind == "random3") {
        if (n < 4 || n % 2 != 0) throw ParseError(kind + " needs even n >= 4");
        inst = gen_random(n, kind == "random2" ? 2 : 3, seed);
    } else {
        throw ParseError("unknown generator kind: " + kind);
    }
    emit(out, write_instance_json(inst));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"doubly balanced connected partitioning of weighted graphs"};
    app.require_subcommand(1);

    InputOptions part_in, embed_in, oracle_in;
    OutputOptions part_out, embed_out, oracle_out, gen_out;

    auto* part = app.add_subcommand("partition", "solve an instance and print the two sides");
    std::string mode = "auto";
    int q = 4;
    unsigned long long part_seed = 1;
    bool centered = false;
    std::vector<int> anchors;
    add_input_flags(part, part_in);
    part->add_option("--mode", mode, "solver family")
        ->check(CLI::IsMember({"auto", "bcpi2", "bcpi3", "dbcp"}));
    part->add_option("--q", q, "separation-pair split parameter")->check(CLI::Range(2, 64));
    part->add_option("--seed", part_seed, "embedding perturbation seed");
    part->add_flag("--centered", centered, "balance around p(V)/2 instead of zero");
    part->add_option("--node", anchors, "anchor nodes for the bcpi modes (2 or 3 of them)");
    add_output_flags(part, part_out);

    auto* embed = app.add_subcommand("embed", "render a convex embedding as SVG");
    bool with_partition = false, guides = false;
    unsigned long long embed_seed = 1;
    add_input_flags(embed, embed_in);
    embed->add_flag("--with-partition", with_partition, "color nodes by the computed sides");
    embed->add_flag("--guides", guides, "draw the anchor triangle and half-plane lines");
    embed->add_option("--seed", embed_seed, "embedding perturbation seed");
    add_output_flags(embed, embed_out);

    auto* oracle = app.add_subcommand("oracle", "enumerate the exact imbalance/ratio frontier");
    std::optional<int> cap;
    bool oracle_centered = false;
    std::vector<std::string> check;
    add_input_flags(oracle, oracle_in);
    oracle->add_option("--cap", cap, "node-count ceiling for enumeration");
    oracle->add_flag("--centered", oracle_centered, "measure imbalance around p(V)/2");
    oracle->add_option("--check", check, "report whether some point meets c_p c_s")
        ->expected(2);
    add_output_flags(oracle, oracle_out);

    auto* gen = app.add_subcommand("gen", "emit a generated instance as JSON");
    std::string kind;
    int s = 1, t = 0, n = 8;
    unsigned long long gen_seed = 1;
    gen->add_option("kind", kind, "fig1 | random2 | random3")->required();
    gen->add_option("--s", s, "fig1: number of paths is 2s+1");
    gen->add_option("--t", t, "fig1: interior nodes per path is 4t+2");
    gen->add_option("--n", n, "random2/random3: node count");
    gen->add_option("--seed", gen_seed, "generator seed");
    add_output_flags(gen, gen_out);

    try {
        app.parse(argc, argv);
        if (part->parsed())
            return cmd_partition(part_in, part_out, mode, q, part_seed, centered, anchors);
        if (embed->parsed())
            return cmd_embed(embed_in, embed_out, with_partition, embed_seed, guides);
        if (oracle->parsed())
            return cmd_oracle(oracle_in, oracle_out, cap, oracle_centered, check);
        if (gen->parsed()) return cmd_gen(kind, s, t, n, gen_seed, gen_out);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const CapExceededError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
