#include <gridcleave/errors.hpp>
#include <gridcleave/io.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gridcleave {

using nlohmann::json;

std::string rat_to_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

bool valid_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

} // namespace

Rat rat_from_string(const std::string& text) {
    std::string num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!valid_integer_token(num) || !valid_integer_token(den))
        throw ParseError("not a rational: '" + text + "'");
    if (num.front() == '+') num.erase(0, 1);
    if (den.front() == '+') den.erase(0, 1);
    Int d(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    Rat q(Int(num), d);
    q.canonicalize();
    return q;
}

namespace {

Rat rat_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw ParseError(where + ": weight must be an integer or a rational string");
}

Instance instance_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges"))
        throw ParseError("instance document needs 'nodes' and 'edges'");
    const json& nodes = doc.at("nodes");
    const json& edges = doc.at("edges");
    if (!nodes.is_array() || !edges.is_array())
        throw ParseError("'nodes' and 'edges' must be arrays");

    int n = static_cast<int>(nodes.size());
    std::vector<Rat> weights(n, Rat(0));
    std::vector<char> seen(n, 0);
    for (const json& nd : nodes) {
        if (!nd.is_object() || !nd.contains("id"))
            throw ParseError("node entry needs an 'id'");
        if (!nd.at("id").is_number_integer()) throw ParseError("node id must be an integer");
        long long id = nd.at("id").get<long long>();
        if (id < 0 || id >= n)
            throw PreconditionError("node ids must be exactly 0.." + std::to_string(n - 1));
        if (seen[id]) throw PreconditionError("duplicate node id " + std::to_string(id));
        seen[id] = 1;
        weights[id] = nd.contains("p") ? rat_from_json(nd.at("p"), "node " + std::to_string(id))
                                       : Rat(0);
    }

    std::vector<std::pair<int, int>> edge_list;
    for (const json& e : edges) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw ParseError("each edge must be a [u,v] integer pair");
        edge_list.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Instance{make_graph(n, std::move(edge_list)), make_weights(std::move(weights))};
}

json parse_stream(std::istream& in) {
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace

Instance read_instance_json(std::istream& in) { return instance_from_json(parse_stream(in)); }

Instance read_instance_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_instance_json(in);
}

std::string write_instance_json(const Instance& inst) {
    json nodes = json::array();
    for (int v = 0; v < inst.graph.n; ++v)
        nodes.push_back({{"id", v}, {"p", rat_to_string(inst.weights[v])}});
    json edges = json::array();
    for (auto [u, v] : inst.graph.edges) edges.push_back({u, v});
    return json{{"nodes", nodes}, {"edges", edges}}.dump();
}

Graph read_edge_list(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    int n = 0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u)) continue; // blank line
        std::string rest;
        if (!(ls >> v) || (ls >> rest))
            throw ParseError("edge list line " + std::to_string(lineno) +
                             ": expected 'u v'");
        if (u < 0 || v < 0) throw ParseError("negative node id on line " + std::to_string(lineno));
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        n = std::max({n, static_cast<int>(u) + 1, static_cast<int>(v) + 1});
    }
    return make_graph(n, std::move(edges));
}

WeightAssignment read_weight_list(std::istream& in, int n) {
    std::vector<Rat> values(n, Rat(0));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        long long id;
        std::string value, rest;
        if (!(ls >> id)) continue;
        if (!(ls >> value) || (ls >> rest))
            throw ParseError("weight list line " + std::to_string(lineno) +
                             ": expected 'id value'");
        if (id < 0 || id >= n)
            throw PreconditionError("weight for unknown node " + std::to_string(id));
        values[id] = rat_from_string(value);
    }
    return make_weights(std::move(values));
}

std::string write_partition_json(const PartitionDocument& doc) {
    json out;
    const auto& part = doc.partition;
    for (std::size_t i = 0; i < part.parts.size(); ++i)
        out["V" + std::to_string(i + 1)] = part.parts[i];
    json sums = json::array(), sizes = json::array();
    for (const auto& s : part.sums) sums.push_back(rat_to_string(s));
    for (int s : part.sizes) sizes.push_back(s);
    out["p"] = sums;
    out["sizes"] = sizes;
    out["trace"] = doc.trace;
    out["seed"] = doc.seed;
    return out.dump();
}

PartitionDocument read_partition_json(std::istream& in, const Graph& g,
                                      const WeightAssignment& p) {
    json doc = parse_stream(in);
    if (!doc.is_object()) throw ParseError("partition document must be an object");
    std::vector<std::vector<int>> parts;
    for (int i = 1;; ++i) {
        std::string key = "V" + std::to_string(i);
        if (!doc.contains(key)) break;
        if (!doc.at(key).is_array()) throw ParseError(key + " must be an array");
        parts.push_back(doc.at(key).get<std::vector<int>>());
    }
    if (parts.size() < 2) throw ParseError("partition document needs V1 and V2");
    PartitionDocument out;
    out.partition = make_partition(g, p, std::move(parts));
    if (doc.contains("p")) {
        const json& sums = doc.at("p");
        if (!sums.is_array() || sums.size() != out.partition.sums.size())
            throw ParseError("'p' must list one sum per part");
        for (std::size_t i = 0; i < out.partition.sums.size(); ++i)
            if (rat_from_json(sums[i], "p") != out.partition.sums[i])
                throw PreconditionError("stored part sum disagrees with recomputation");
    }
    if (doc.contains("sizes")) {
        std::vector<int> sizes = doc.at("sizes").get<std::vector<int>>();
        if (sizes != out.partition.sizes)
            throw PreconditionError("stored sizes disagree with recomputation");
    }
    if (doc.contains("trace")) out.trace = doc.at("trace").get<std::string>();
    if (doc.contains("seed")) out.seed = doc.at("seed").get<unsigned long long>();
    return out;
}

} // namespace gridcleave
