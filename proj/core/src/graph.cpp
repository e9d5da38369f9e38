#include <gridcleave/errors.hpp>
#include <gridcleave/graph.hpp>

#include <algorithm>
#include <set>
#include <string>

namespace gridcleave {

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n || v >= n) return false;
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw PreconditionError("node count must be nonnegative");
    Graph g;
    g.n = n;
    g.adj.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw PreconditionError("edge endpoint out of range: (" + std::to_string(u) +
                                    "," + std::to_string(v) + ")");
        if (u == v) throw PreconditionError("self-loop at node " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second)
            throw PreconditionError("duplicate edge (" + std::to_string(u) + "," +
                                    std::to_string(v) + ")");
    }
    g.edges.assign(seen.begin(), seen.end());
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

WeightAssignment make_weights(std::vector<Rat> values) {
    WeightAssignment p;
    p.total = 0;
    for (auto& v : values) {
        v.canonicalize();
        p.total += v;
    }
    p.value = std::move(values);
    return p;
}

bool is_pm1(const WeightAssignment& p) {
    return std::all_of(p.value.begin(), p.value.end(),
                       [](const Rat& v) { return v == 1 || v == -1; });
}

Rat max_abs_weight(const WeightAssignment& p) {
    Rat best = 0;
    for (const auto& v : p.value) {
        Rat a = rat_abs(v);
        if (a > best) best = a;
    }
    return best;
}

Rat weight_sum(const WeightAssignment& p, const std::vector<int>& nodes) {
    Rat s = 0;
    for (int v : nodes) s += p.value[v];
    return s;
}

Partition make_partition(const Graph& g, const WeightAssignment& p,
                         std::vector<std::vector<int>> parts) {
    std::vector<char> seen(g.n, 0);
    Partition out;
    for (auto& part : parts) {
        std::sort(part.begin(), part.end());
        Rat s = 0;
        for (int v : part) {
            if (v < 0 || v >= g.n) throw PreconditionError("partition node out of range");
            if (seen[v]) throw PreconditionError("partition parts overlap");
            seen[v] = 1;
            s += p.value[v];
        }
        out.sums.push_back(s);
        out.sizes.push_back(static_cast<int>(part.size()));
    }
    if (std::count(seen.begin(), seen.end(), 1) != g.n)
        throw PreconditionError("partition does not cover all nodes");
    out.parts = std::move(parts);
    return out;
}

namespace {

// BFS over the subgraph induced by mask (mask[v]!=0 means allowed).
int reach_count(const Graph& g, const std::vector<char>& mask, int start,
                std::vector<char>& visited) {
    std::vector<int> stack{start};
    visited[start] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.adj[v]) {
            if (mask[w] && !visited[w]) {
                visited[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count;
}

} // namespace

bool connected_induced(const Graph& g, const std::vector<int>& s) {
    if (s.size() <= 1) return true;
    std::vector<char> mask(g.n, 0);
    for (int v : s) mask[v] = 1;
    std::vector<char> visited(g.n, 0);
    return reach_count(g, mask, s.front(), visited) == static_cast<int>(s.size());
}

bool is_connected(const Graph& g) {
    if (g.n <= 1) return true;
    std::vector<char> mask(g.n, 1), visited(g.n, 0);
    return reach_count(g, mask, 0, visited) == g.n;
}

std::vector<std::vector<int>> components_after_removal(const Graph& g,
                                                       const std::vector<int>& removed) {
    std::vector<char> mask(g.n, 1);
    for (int v : removed) mask[v] = 0;
    std::vector<char> visited(g.n, 0);
    std::vector<std::vector<int>> comps;
    for (int v = 0; v < g.n; ++v) {
        if (!mask[v] || visited[v]) continue;
        std::vector<int> comp, stack{v};
        visited[v] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (int w : g.adj[x]) {
                if (mask[w] && !visited[w]) {
                    visited[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_k_connected(const Graph& g, int k) {
    if (k < 1 || k > 3) throw PreconditionError("is_k_connected supports k in 1..3");
    if (g.n <= k) return false; // k-connectivity needs > k nodes
    if (!is_connected(g)) return false;
    if (k == 1) return true;
    // Exhaustive cut-set search over all (k-1)-subsets.
    for (int a = 0; a < g.n; ++a) {
        if (k == 2) {
            if (components_after_removal(g, {a}).size() > 1) return false;
            continue;
        }
        for (int b = a + 1; b < g.n; ++b)
            if (components_after_removal(g, {a, b}).size() > 1) return false;
    }
    if (k == 3) {
        for (int a = 0; a < g.n; ++a)
            if (components_after_removal(g, {a}).size() > 1) return false;
    }
    return true;
}

std::vector<SeparationPair> find_separation_pairs(const Graph& g) {
    std::vector<SeparationPair> out;
    for (int a = 0; a < g.n; ++a) {
        for (int b = a + 1; b < g.n; ++b) {
            auto comps = components_after_removal(g, {a, b});
            if (comps.size() > 1) out.push_back({a, b, std::move(comps)});
        }
    }
    return out;
}

InstanceDiagnostics validate_instance(const Graph& g, const WeightAssignment& p,
                                      WeightRegime regime) {
    if (static_cast<int>(p.value.size()) != g.n)
        throw PreconditionError("weight count does not match node count");
    InstanceDiagnostics d;
    for (int k = 1; k <= 3; ++k)
        if (is_k_connected(g, k)) d.connectivity = k;
    d.total = p.total;
    d.pm1 = is_pm1(p);
    d.n_mod_4 = g.n % 4;
    if (regime == WeightRegime::pm1)
        d.regime_ok = d.pm1 && (p.total != 0 || g.n % 2 == 0);
    else
        d.regime_ok = true;
    return d;
}

} // namespace gridcleave
