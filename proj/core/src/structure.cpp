#include <gridcleave/errors.hpp>
#include <gridcleave/structure.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace gridcleave {

// ----------------------------------------------------------- st-numbering

bool check_st_numbering(const Graph& g, const StNumbering& num) {
    const int n = g.n;
    if (static_cast<int>(num.order.size()) != n || n < 2) return false;
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        int v = num.order[i];
        if (v < 0 || v >= n || pos[v] != -1) return false;
        pos[v] = i;
    }
    if (num.order.front() != num.s || num.order.back() != num.t) return false;
    for (int v = 0; v < n; ++v) {
        if (v == num.s || v == num.t) continue;
        bool earlier = false, later = false;
        for (int w : g.adj[v]) {
            earlier = earlier || pos[w] < pos[v];
            later = later || pos[w] > pos[v];
        }
        if (!earlier || !later) return false;
    }
    return true;
}

namespace {

// Shortest path from s to t, optionally banning the direct edge; empty on
// failure. Deterministic: BFS scans neighbors in ascending order.
std::vector<int> bfs_path(const Graph& g, int s, int t, bool ban_direct_edge) {
    std::vector<int> parent(g.n, -2);
    parent[s] = -1;
    std::vector<int> queue{s};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (int w : g.adj[v]) {
            if (ban_direct_edge && v == s && w == t) continue;
            if (parent[w] != -2) continue;
            parent[w] = v;
            if (w == t) {
                std::vector<int> path{t};
                for (int x = v; x != -1; x = parent[x]) path.push_back(x);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(w);
        }
    }
    return {};
}

} // namespace

StNumbering st_numbering(const Graph& g, int s, int t) {
    const int n = g.n;
    if (s == t || s < 0 || t < 0 || s >= n || t >= n)
        throw PreconditionError("st-numbering needs two distinct nodes");
    if (n == 2) {
        StNumbering num{{s, t}, s, t};
        return num;
    }
    {
        // 2-connectivity with the {s,t} edge present virtually.
        Graph h = g.has_edge(s, t) ? g : [&] {
            auto e = g.edges;
            e.emplace_back(s, t);
            return make_graph(n, e);
        }();
        if (!is_k_connected(h, 2))
            throw PreconditionError("st-numbering needs a 2-connected graph "
                                    "(with the virtual {s,t} edge)");
    }

    // Initial ear: an s-t path avoiding the direct edge, so interior nodes
    // exist whenever n > 2 demands them. Falls back to the direct edge
    // path only if the graph is a single edge plus isolated structure,
    // which 2-connectivity rules out.
    std::vector<int> path = bfs_path(g, s, t, g.has_edge(s, t));
    if (path.empty()) path = bfs_path(g, s, t, false);
    if (path.empty()) throw PreconditionError("no s-t path");

    std::vector<int> order = path;
    std::vector<char> placed(n, 0);
    for (int v : order) placed[v] = 1;

    auto pos_of = [&](int v) {
        return static_cast<int>(std::find(order.begin(), order.end(), v) - order.begin());
    };

    int placed_count = static_cast<int>(order.size());
    while (placed_count < n) {
        // Smallest unplaced node adjacent to the placed set.
        int x = -1, a = -1;
        for (int v = 0; v < n && x == -1; ++v) {
            if (placed[v]) continue;
            for (int w : g.adj[v])
                if (placed[w]) {
                    x = v;
                    a = w;
                    break;
                }
        }
        if (x == -1) throw InternalError("2-connected graph left unreachable nodes");

        // Path from x to a second placed node avoiding a: gives the open
        // ear a - x - ... - b.
        std::vector<int> parent(n, -2);
        parent[x] = -1;
        parent[a] = -3; // banned
        std::vector<int> queue{x};
        int b = -1;
        for (std::size_t qi = 0; qi < queue.size() && b == -1; ++qi) {
            int v = queue[qi];
            for (int w : g.adj[v]) {
                if (parent[w] != -2) continue;
                parent[w] = v;
                if (placed[w]) {
                    b = w;
                    break;
                }
                queue.push_back(w);
            }
        }
        if (b == -1) throw InternalError("no open ear found; graph not 2-connected?");
        std::vector<int> interior;
        for (int v = parent[b]; v != -1; v = parent[v]) interior.push_back(v);
        std::reverse(interior.begin(), interior.end()); // x first, toward b

        // Insert interior as a block after the earlier endpoint, oriented
        // toward the later endpoint: every ear node then has neighbors on
        // both sides in the order.
        int pa = pos_of(a), pb = pos_of(b);
        std::vector<int> block(interior);
        int after = pa;
        if (pa > pb) {
            std::reverse(block.begin(), block.end());
            after = pb;
        }
        order.insert(order.begin() + after + 1, block.begin(), block.end());
        for (int v : block) placed[v] = 1;
        placed_count += static_cast<int>(block.size());
    }

    StNumbering num{std::move(order), s, t};
    if (!check_st_numbering(g, num))
        throw InternalError("constructed st-numbering failed validation");
    return num;
}

// ------------------------------------------------------------ pseudo-path

bool check_pseudo_path(const Graph& g, const PseudoPath& p) {
    std::vector<int> seq;
    seq.push_back(p.u);
    seq.insert(seq.end(), p.interior.begin(), p.interior.end());
    seq.push_back(p.v);
    std::set<int> distinct(seq.begin(), seq.end());
    if (distinct.size() != seq.size()) return false;
    for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
        bool earlier = false, later = false;
        for (std::size_t j = 0; j < seq.size(); ++j) {
            if (!g.has_edge(seq[i], seq[j])) continue;
            earlier = earlier || j < i;
            later = later || j > i;
        }
        if (!earlier || !later) return false;
    }
    return true;
}

PseudoPath pseudo_path(const Graph& g, const std::vector<int>& component, int u, int v) {
    auto comps = components_after_removal(g, {u, v});
    std::vector<int> sorted_comp = component;
    std::sort(sorted_comp.begin(), sorted_comp.end());
    if (std::find(comps.begin(), comps.end(), sorted_comp) == comps.end())
        throw PreconditionError("not a connected component of G - {u,v}");

    // Local subgraph on component + {u,v} with ids 0..k+1; virtual edge
    // added via st_numbering itself.
    std::vector<int> nodes = sorted_comp;
    nodes.push_back(u);
    nodes.push_back(v);
    std::sort(nodes.begin(), nodes.end());
    std::vector<int> local(g.n, -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : g.edges)
        if (local[a] != -1 && local[b] != -1) edges.emplace_back(local[a], local[b]);
    Graph h = make_graph(static_cast<int>(nodes.size()), std::move(edges));

    StNumbering num = st_numbering(h, local[u], local[v]);
    PseudoPath out;
    out.u = u;
    out.v = v;
    for (std::size_t i = 1; i + 1 < num.order.size(); ++i)
        out.interior.push_back(nodes[num.order[i]]);
    if (!check_pseudo_path(g, out)) throw InternalError("pseudo-path validation failed");
    return out;
}

// ------------------------------------------- nonseparating induced cycles

namespace {

bool cycle_has_edge(const std::vector<int>& cycle, int a, int b) {
    const int k = static_cast<int>(cycle.size());
    for (int i = 0; i < k; ++i) {
        int x = cycle[i], y = cycle[(i + 1) % k];
        if ((x == a && y == b) || (x == b && y == a)) return true;
    }
    return false;
}

bool is_chordless_cycle(const Graph& g, const std::vector<int>& cycle) {
    const int k = static_cast<int>(cycle.size());
    if (k < 3) return false;
    std::set<int> distinct(cycle.begin(), cycle.end());
    if (static_cast<int>(distinct.size()) != k) return false;
    for (int i = 0; i < k; ++i)
        if (!g.has_edge(cycle[i], cycle[(i + 1) % k])) return false;
    for (int i = 0; i < k; ++i)
        for (int j = i + 2; j < k; ++j) {
            if (i == 0 && j == k - 1) continue;
            if (g.has_edge(cycle[i], cycle[j])) return false;
        }
    return true;
}

bool cycle_nonseparating(const Graph& g, const std::vector<int>& cycle) {
    std::vector<int> rest;
    std::vector<char> in_cycle(g.n, 0);
    for (int v : cycle) in_cycle[v] = 1;
    for (int v = 0; v < g.n; ++v)
        if (!in_cycle[v]) rest.push_back(v);
    return !rest.empty() && connected_induced(g, rest);
}

std::vector<int> canonical_cycle(std::vector<int> cycle) {
    auto mn = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), mn, cycle.end());
    if (cycle.size() > 2 && cycle[1] > cycle.back())
        std::reverse(cycle.begin() + 1, cycle.end());
    return cycle;
}

// Removes chords by always cutting the arc that keeps the (a,b) edge.
std::vector<int> shortcut_chords(const Graph& g, std::vector<int> cycle, int a, int b) {
    for (bool changed = true; changed;) {
        changed = false;
        const int k = static_cast<int>(cycle.size());
        for (int i = 0; i < k && !changed; ++i)
            for (int j = i + 2; j < k && !changed; ++j) {
                if (i == 0 && j == k - 1) continue;
                if (!g.has_edge(cycle[i], cycle[j])) continue;
                // Two candidate replacements; keep the one containing the
                // through edge.
                std::vector<int> inner(cycle.begin() + i, cycle.begin() + j + 1);
                std::vector<int> outer(cycle.begin() + j, cycle.end());
                outer.insert(outer.end(), cycle.begin(), cycle.begin() + i + 1);
                cycle = cycle_has_edge(inner, a, b) ? inner : outer;
                changed = true;
            }
    }
    return cycle;
}

} // namespace

std::vector<std::vector<int>> enumerate_induced_cycles(const Graph& g) {
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    std::vector<char> used(g.n, 0);

    // Chordless-path DFS: v0 is the cycle minimum, second node below the
    // last node for a canonical direction.
    auto extend = [&](auto&& self, int v0) -> void {
        int last = path.back();
        for (int x : g.adj[last]) {
            if (x <= v0 || used[x]) continue;
            bool chord = false;
            for (std::size_t i = 0; i + 1 < path.size() && !chord; ++i)
                chord = g.has_edge(x, path[i]);
            // x may close the cycle through v0 only if no other chords; a
            // closure needs two path nodes already (cycle length >= 3).
            bool closes = path.size() >= 2 && g.has_edge(x, v0);
            bool chord_to_mid = false;
            for (std::size_t i = 1; i + 1 < path.size() && !chord_to_mid; ++i)
                chord_to_mid = g.has_edge(x, path[i]);
            if (closes && !chord_to_mid && path.size() >= 2 && path[1] < x) {
                std::vector<int> cycle = path;
                cycle.push_back(x);
                out.push_back(cycle);
            }
            if (chord || closes) continue; // chordless paths only
            used[x] = 1;
            path.push_back(x);
            self(self, v0);
            path.pop_back();
            used[x] = 0;
        }
    };

    for (int v0 = 0; v0 < g.n; ++v0) {
        std::fill(used.begin(), used.end(), 0);
        used[v0] = 1;
        path = {v0};
        extend(extend, v0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> nonseparating_induced_cycle(const Graph& g, int t, int r, int avoid) {
    if (!g.has_edge(t, r)) throw PreconditionError("{t,r} must be an edge");
    if (avoid == t || avoid == r || avoid < 0 || avoid >= g.n)
        throw PreconditionError("avoided node must differ from the through edge");
    if (!is_k_connected(g, 3)) throw PreconditionError("graph must be 3-connected");

    auto finish = [&](const std::vector<int>& cycle) {
        std::vector<int> c = canonical_cycle(cycle);
        if (!is_chordless_cycle(g, c) || !cycle_has_edge(c, t, r) ||
            std::find(c.begin(), c.end(), avoid) != c.end() || !cycle_nonseparating(g, c))
            return std::vector<int>{};
        return c;
    };

    // Start: shortest t-r path in G - avoid - {t,r} edge, closed by the
    // edge; shortest implies chordless.
    std::vector<int> cycle;
    {
        std::vector<std::pair<int, int>> edges;
        for (auto [a, b] : g.edges)
            if (a != avoid && b != avoid && !(a == std::min(t, r) && b == std::max(t, r)))
                edges.push_back({a, b});
        Graph h = make_graph(g.n, std::move(edges));
        std::vector<int> path = bfs_path(h, t, r, false);
        if (path.empty()) throw InternalError("3-connected graph lost t-r connectivity");
        cycle = path; // t ... r, closed by the through edge
    }
    if (auto c = finish(cycle); !c.empty()) return c;

    // Improvement: reroute around a component of G \ C that does not
    // contain the avoided node, then re-validate. The potential (fewer
    // components, larger avoided-side component) must strictly improve.
    auto potential = [&](const std::vector<int>& c) {
        std::vector<char> in_c(g.n, 0);
        for (int v : c) in_c[v] = 1;
        auto comps = components_after_removal(g, c);
        int avoid_size = 0;
        for (const auto& comp : comps)
            if (std::find(comp.begin(), comp.end(), avoid) != comp.end())
                avoid_size = static_cast<int>(comp.size());
        return std::pair<int, int>(-static_cast<int>(comps.size()), avoid_size);
    };

    for (int round = 0; round < g.n * g.n; ++round) {
        auto comps = components_after_removal(g, cycle);
        if (comps.size() <= 1) break; // validated path failed elsewhere; fallback
        auto base = potential(cycle);
        std::vector<char> in_cycle(g.n, 0);
        for (int v : cycle) in_cycle[v] = 1;

        bool improved = false;
        for (const auto& comp : comps) {
            if (std::find(comp.begin(), comp.end(), avoid) != comp.end()) continue;
            std::vector<char> in_comp(g.n, 0);
            for (int v : comp) in_comp[v] = 1;
            // Attachment positions along the cycle.
            const int k = static_cast<int>(cycle.size());
            std::vector<int> attach;
            for (int i = 0; i < k; ++i)
                for (int w : g.adj[cycle[i]])
                    if (in_comp[w]) {
                        attach.push_back(i);
                        break;
                    }
            for (std::size_t ai = 0; ai < attach.size() && !improved; ++ai) {
                int i1 = attach[ai], i2 = attach[(ai + 1) % attach.size()];
                // Arc strictly between consecutive attachments i1 -> i2.
                std::vector<int> arc_interior;
                for (int i = (i1 + 1) % k; i != i2; i = (i + 1) % k)
                    arc_interior.push_back(cycle[i]);
                if (arc_interior.empty()) continue;
                bool holds_edge = false;
                for (int v : arc_interior) holds_edge = holds_edge || v == t || v == r;
                if (holds_edge) continue;
                // Shortest path through the component between the two
                // attachment nodes.
                std::vector<std::pair<int, int>> edges;
                for (auto [a, b] : g.edges) {
                    bool oka = in_comp[a] || a == cycle[i1] || a == cycle[i2];
                    bool okb = in_comp[b] || b == cycle[i1] || b == cycle[i2];
                    if (oka && okb) edges.push_back({a, b});
                }
                Graph h = make_graph(g.n, std::move(edges));
                std::vector<int> repl = bfs_path(h, cycle[i1], cycle[i2], false);
                if (repl.size() < 3) continue;
                std::vector<int> next;
                for (int i = i2; i != i1; i = (i + 1) % k) next.push_back(cycle[i]);
                next.push_back(cycle[i1]);
                next.insert(next.end(), repl.begin() + 1, repl.end() - 1);
                next = shortcut_chords(g, next, t, r);
                if (!is_chordless_cycle(g, next) || !cycle_has_edge(next, t, r)) continue;
                if (std::find(next.begin(), next.end(), avoid) != next.end()) continue;
                if (potential(next) > base) {
                    cycle = next;
                    improved = true;
                }
            }
            if (improved) break;
        }
        if (!improved) break;
        if (auto c = finish(cycle); !c.empty()) return c;
    }

    // Exhaustive fallback; existence is a theorem, so not finding one is
    // an internal error.
    for (const auto& c : enumerate_induced_cycles(g)) {
        if (!cycle_has_edge(c, t, r)) continue;
        if (std::find(c.begin(), c.end(), avoid) != c.end()) continue;
        if (cycle_nonseparating(g, c)) return canonical_cycle(c);
    }
    throw InternalError("no nonseparating induced cycle found");
}

// --------------------------------------------------- ear decompositions

bool check_ear_decomposition(const Graph& g, const EarDecomposition& d) {
    if (d.ears.empty()) return false;
    const auto& c0 = d.ears.front();
    {
        // Initial ear must be a cycle, not necessarily chordless.
        const int k = static_cast<int>(c0.size());
        if (k < 3) return false;
        std::set<int> distinct(c0.begin(), c0.end());
        if (static_cast<int>(distinct.size()) != k) return false;
        for (int i = 0; i < k; ++i)
            if (!g.has_edge(c0[i], c0[(i + 1) % k])) return false;
    }
    if (!cycle_has_edge(c0, d.through.first, d.through.second)) return false;
    if (std::find(c0.begin(), c0.end(), d.avoided) != c0.end()) return false;

    std::vector<char> placed(g.n, 0);
    for (int v : c0) placed[v] = 1;
    {
        // Cycle complement connected (trivially false only if the cycle
        // already covers everything, which the last-ear rule forbids).
        std::vector<int> outside;
        for (int v = 0; v < g.n; ++v)
            if (!placed[v]) outside.push_back(v);
        if (outside.empty() || !connected_induced(g, outside)) return false;
    }

    const int m = static_cast<int>(d.ears.size()) - 1; // index of avoided ear
    for (int i = 1; i < static_cast<int>(d.ears.size()); ++i) {
        const auto& ear = d.ears[i];
        if (ear.size() < 3) return false; // endpoint, >=1 interior, endpoint
        if (!placed[ear.front()] || !placed[ear.back()]) return false;
        if (ear.front() == ear.back()) return false;
        for (std::size_t j = 0; j + 1 < ear.size(); ++j)
            if (!g.has_edge(ear[j], ear[j + 1])) return false;
        for (std::size_t j = 1; j + 1 < ear.size(); ++j) {
            if (placed[ear[j]]) return false;
            placed[ear[j]] = 1;
        }
        if (i == m) {
            // The avoided node is the single interior node of the last ear.
            if (ear.size() != 3 || ear[1] != d.avoided) return false;
        }
        if (i >= m) continue;
        // Prefix complement connected; interior nodes keep an outside
        // neighbor.
        std::vector<int> outside;
        for (int v = 0; v < g.n; ++v)
            if (!placed[v]) outside.push_back(v);
        if (outside.empty() || !connected_induced(g, outside)) return false;
        for (std::size_t j = 1; j + 1 < ear.size(); ++j) {
            bool has_out = false;
            for (int w : g.adj[ear[j]]) has_out = has_out || !placed[w];
            if (!has_out) return false;
        }
    }
    return std::count(placed.begin(), placed.end(), 1) == g.n;
}

EarDecomposition nonseparating_ear_decomposition(const Graph& g, int t, int r, int avoid) {
    EarDecomposition d;
    d.through = {t, r};
    d.avoided = avoid;
    d.ears.push_back(nonseparating_induced_cycle(g, t, r, avoid));

    std::vector<char> placed(g.n, 0);
    int placed_count = 0;
    for (int v : d.ears[0]) {
        placed[v] = 1;
        ++placed_count;
    }

    // Remainder connectivity after hypothetically placing `extra`.
    auto remainder_ok = [&](const std::vector<int>& extra) {
        std::vector<char> next = placed;
        for (int v : extra) next[v] = 1;
        std::vector<int> outside;
        for (int v = 0; v < g.n; ++v)
            if (!next[v]) outside.push_back(v);
        if (outside.empty()) return false; // avoid must remain outside
        if (!connected_induced(g, outside)) return false;
        for (int v : extra) {
            bool has_out = false;
            for (int w : g.adj[v]) has_out = has_out || !next[w];
            if (!has_out) return false;
        }
        return true;
    };

    while (placed_count < g.n - 1) {
        // Lexicographically smallest valid ear, searched by interior
        // length. DFS over interior paths in unplaced nodes (avoiding the
        // avoided node), endpoints placed and distinct.
        std::vector<int> best;
        for (int len = 1; len <= g.n - 1 - placed_count && best.empty(); ++len) {
            std::vector<int> seq; // a, interior..., b
            auto dfs = [&](auto&& self) -> bool {
                if (static_cast<int>(seq.size()) == len + 1) {
                    int last = seq.back();
                    for (int b : g.adj[last]) {
                        if (!placed[b] || b == seq.front()) continue;
                        std::vector<int> interior(seq.begin() + 1, seq.end());
                        if (!remainder_ok(interior)) continue;
                        seq.push_back(b);
                        best = seq;
                        seq.pop_back();
                        return true;
                    }
                    return false;
                }
                int from = seq.back();
                for (int x : g.adj[from]) {
                    if (placed[x] || x == avoid) continue;
                    if (std::find(seq.begin() + 1, seq.end(), x) != seq.end()) continue;
                    seq.push_back(x);
                    if (self(self)) return true;
                    seq.pop_back();
                }
                return false;
            };
            for (int a = 0; a < g.n && best.empty(); ++a) {
                if (!placed[a]) continue;
                seq = {a};
                dfs(dfs);
            }
        }
        if (best.empty())
            throw InternalError("no nonseparating ear available; 3-connectivity promises one");
        for (std::size_t j = 1; j + 1 < best.size(); ++j) {
            placed[best[j]] = 1;
            ++placed_count;
        }
        d.ears.push_back(std::move(best));
    }

    // Final ear: the avoided node between its two smallest neighbors.
    std::vector<int> nb = g.adj[avoid];
    if (nb.size() < 2) throw InternalError("avoided node of degree < 2 in a 3-connected graph");
    d.ears.push_back({nb[0], avoid, nb[1]});

    if (!check_ear_decomposition(g, d))
        throw InternalError("constructed ear decomposition failed validation");
    return d;
}

// ---------------------------------------------------------- contraction

int ContractedGraph::total_weight() const {
    int sum = 0;
    for (const auto& e : edges) sum += e.weight();
    return sum;
}

Graph ContractedGraph::skeleton(std::vector<int>& orig_of, std::vector<int>& quot_of) const {
    orig_of = nodes;
    quot_of.assign(orig_of.empty() ? 0 : *std::max_element(orig_of.begin(), orig_of.end()) + 1,
                   -1);
    for (std::size_t i = 0; i < orig_of.size(); ++i) quot_of[orig_of[i]] = static_cast<int>(i);
    std::set<std::pair<int, int>> simple;
    for (const auto& e : edges) {
        int a = quot_of[e.u], b = quot_of[e.v];
        simple.insert({std::min(a, b), std::max(a, b)});
    }
    return make_graph(static_cast<int>(orig_of.size()), {simple.begin(), simple.end()});
}

namespace {

// Original size of each quotient-node component after removing {x,y}:
// node count plus interior weights of edges inside the component or from
// it to the removed pair.
struct QuotientCut {
    std::vector<std::vector<int>> components; // quotient node ids (original labels)
    std::vector<long long> sizes;             // original-node sizes
};

QuotientCut quotient_cut(const ContractedGraph& q, int x, int y) {
    std::map<int, int> comp_of;
    for (int v : q.nodes)
        if (v != x && v != y) comp_of[v] = -1;
    // Union-find-lite via BFS over quotient edges not incident to x, y.
    std::map<int, std::vector<int>> adj;
    for (const auto& e : q.edges) {
        if (e.u == x || e.u == y || e.v == x || e.v == y) continue;
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    QuotientCut cut;
    for (auto& [start, mark] : comp_of) {
        if (mark != -1) continue;
        int id = static_cast<int>(cut.components.size());
        std::vector<int> comp, stack{start};
        comp_of[start] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : adj[v])
                if (comp_of[w] == -1) {
                    comp_of[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        cut.components.push_back(std::move(comp));
    }
    cut.sizes.assign(cut.components.size(), 0);
    for (std::size_t i = 0; i < cut.components.size(); ++i)
        cut.sizes[i] = static_cast<long long>(cut.components[i].size());
    for (const auto& e : q.edges) {
        bool u_cut = e.u == x || e.u == y, v_cut = e.v == x || e.v == y;
        if (u_cut && v_cut) continue; // orphaned pair-internal edge
        int owner = u_cut ? e.v : e.u;
        cut.sizes[comp_of[owner]] += e.weight();
    }
    return cut;
}

} // namespace

Decomposition decompose_q(const Graph& g, int q) {
    if (q < 3) throw PreconditionError("decompose_q needs q >= 3");
    if (!is_k_connected(g, 2)) throw PreconditionError("decompose_q needs a 2-connected graph");
    if (g.n < 4) throw PreconditionError("decompose_q needs at least 4 nodes");

    const long long n = g.n;
    ContractedGraph quot;
    quot.nodes.resize(g.n);
    std::iota(quot.nodes.begin(), quot.nodes.end(), 0);
    for (auto [u, v] : g.edges) quot.edges.push_back({u, v, {}});

    for (;;) {
        // Lexicographically smallest separating pair of the quotient.
        int sx = -1, sy = -1;
        QuotientCut cut;
        for (std::size_t i = 0; i < quot.nodes.size() && sx == -1; ++i)
            for (std::size_t j = i + 1; j < quot.nodes.size(); ++j) {
                auto c = quotient_cut(quot, quot.nodes[i], quot.nodes[j]);
                if (c.components.size() >= 2) {
                    sx = quot.nodes[i];
                    sy = quot.nodes[j];
                    cut = std::move(c);
                    break;
                }
            }
        if (sx == -1) break; // no separating pair left

        // Case 1: every original-size component strictly below (q-1)n/q.
        // Pair-internal edge interiors are below n/q < (q-1)n/q already.
        bool all_small = true;
        for (long long s : cut.sizes) all_small = all_small && s * q < (q - 1) * n;
        if (all_small) {
            Decomposition out;
            out.which = Decomposition::Case::separation_pair;
            out.pair = {sx, sy, components_after_removal(g, {sx, sy})};
            return out;
        }

        // Contract every non-largest component into a weighted edge.
        std::size_t keep = 0;
        for (std::size_t i = 1; i < cut.sizes.size(); ++i)
            if (cut.sizes[i] > cut.sizes[keep]) keep = i;
        std::set<int> removed;
        std::vector<ContractedGraph::Edge> new_edges;
        for (std::size_t i = 0; i < cut.components.size(); ++i) {
            if (i == keep) continue;
            // Expand to original nodes: component nodes plus interiors of
            // edges inside it or from it to the pair.
            std::set<int> comp_set(cut.components[i].begin(), cut.components[i].end());
            std::vector<int> expanded(cut.components[i]);
            for (const auto& e : quot.edges) {
                bool u_in = comp_set.count(e.u), v_in = comp_set.count(e.v);
                bool u_cut = e.u == sx || e.u == sy, v_cut = e.v == sx || e.v == sy;
                if ((u_in && (v_in || v_cut)) || (v_in && u_cut))
                    expanded.insert(expanded.end(), e.interior.begin(), e.interior.end());
            }
            std::sort(expanded.begin(), expanded.end());
            PseudoPath path = pseudo_path(g, expanded, sx, sy);
            new_edges.push_back({sx, sy, path.interior});
            removed.insert(comp_set.begin(), comp_set.end());
        }
        std::erase_if(quot.nodes, [&](int v) { return removed.count(v) > 0; });
        std::erase_if(quot.edges, [&](const ContractedGraph::Edge& e) {
            return removed.count(e.u) > 0 || removed.count(e.v) > 0;
        });
        quot.edges.insert(quot.edges.end(), new_edges.begin(), new_edges.end());
    }

    // Case 2: must be a 3-connected quotient with small edge weights.
    std::vector<int> orig_of, quot_of;
    Graph skel = quot.skeleton(orig_of, quot_of);
    if (!is_k_connected(skel, 3))
        throw InternalError("contraction ended without a 3-connected quotient");
    for (const auto& e : quot.edges)
        if (static_cast<long long>(e.weight()) * q >= n)
            throw InternalError("contracted edge weight reached n/q");
    if (quot.total_weight() + static_cast<int>(quot.nodes.size()) != g.n)
        throw InternalError("contraction lost nodes");
    Decomposition out;
    out.which = Decomposition::Case::contracted;
    out.quotient = std::move(quot);
    return out;
}

// -------------------------------------------------------- series-parallel

namespace {

struct SpTreeNode {
    enum class Kind { leaf, series, parallel } kind = Kind::leaf;
    int a = -1, b = -1;       // terminals
    int left = -1, right = -1;
    int node_count = 2;       // graph nodes covered, terminals included
};

struct SpEdge {
    int a, b;
    int tree; // index into the tree node pool
};

// Reduces to a single edge, recording the derivation; nullopt if stuck.
std::optional<std::pair<std::vector<SpTreeNode>, int>> sp_reduce(const Graph& g) {
    std::vector<SpTreeNode> pool;
    std::vector<SpEdge> edges;
    for (auto [u, v] : g.edges) {
        pool.push_back({SpTreeNode::Kind::leaf, u, v, -1, -1, 2});
        edges.push_back({u, v, static_cast<int>(pool.size()) - 1});
    }
    std::vector<int> degree(g.n, 0);
    for (const auto& e : edges) {
        ++degree[e.a];
        ++degree[e.b];
    }

    auto find_parallel = [&]() -> std::pair<int, int> {
        for (std::size_t i = 0; i < edges.size(); ++i)
            for (std::size_t j = i + 1; j < edges.size(); ++j) {
                bool same = (edges[i].a == edges[j].a && edges[i].b == edges[j].b) ||
                            (edges[i].a == edges[j].b && edges[i].b == edges[j].a);
                if (same) return {static_cast<int>(i), static_cast<int>(j)};
            }
        return {-1, -1};
    };

    while (edges.size() > 1) {
        auto [i, j] = find_parallel();
        if (i != -1) {
            SpEdge merged{edges[i].a, edges[i].b, -1};
            int nc = pool[edges[i].tree].node_count + pool[edges[j].tree].node_count - 2;
            pool.push_back({SpTreeNode::Kind::parallel, merged.a, merged.b, edges[i].tree,
                            edges[j].tree, nc});
            merged.tree = static_cast<int>(pool.size()) - 1;
            --degree[merged.a];
            --degree[merged.b];
            edges.erase(edges.begin() + j);
            edges.erase(edges.begin() + i);
            edges.push_back(merged);
            continue;
        }
        // Series: smallest degree-2 node with two distinct neighbors.
        int node = -1;
        for (int v = 0; v < g.n && node == -1; ++v)
            if (degree[v] == 2) node = v;
        if (node == -1) return std::nullopt;
        int e1 = -1, e2 = -1;
        for (std::size_t k = 0; k < edges.size(); ++k)
            if (edges[k].a == node || edges[k].b == node) (e1 == -1 ? e1 : e2) = static_cast<int>(k);
        if (e2 == -1) return std::nullopt; // bridge dangling; not 2-connected
        int u = edges[e1].a == node ? edges[e1].b : edges[e1].a;
        int v = edges[e2].a == node ? edges[e2].b : edges[e2].a;
        if (u == v) return std::nullopt; // parallel would have caught it
        int nc = pool[edges[e1].tree].node_count + pool[edges[e2].tree].node_count - 1;
        pool.push_back({SpTreeNode::Kind::series, u, v, edges[e1].tree, edges[e2].tree, nc});
        SpEdge merged{u, v, static_cast<int>(pool.size()) - 1};
        degree[node] -= 2;
        edges.erase(edges.begin() + std::max(e1, e2));
        edges.erase(edges.begin() + std::min(e1, e2));
        edges.push_back(merged);
    }
    if (edges.empty()) return std::nullopt;
    return std::make_pair(std::move(pool), edges[0].tree);
}

} // namespace

bool is_series_parallel(const Graph& g) {
    if (g.n < 2 || g.m() < 1 || !is_connected(g)) return false;
    return sp_reduce(g).has_value();
}

SeparationPair series_parallel_separation_pair(const Graph& g) {
    if (!is_k_connected(g, 2))
        throw PreconditionError("series-parallel walk needs a 2-connected graph");
    auto reduced = sp_reduce(g);
    if (!reduced) throw PreconditionError("graph is not series-parallel");
    const auto& [pool, root] = *reduced;
    const long long n = g.n;

    int cur = root;
    for (;;) {
        const SpTreeNode& nd = pool[cur];
        if (nd.kind == SpTreeNode::Kind::leaf) break;
        int big = pool[nd.left].node_count >= pool[nd.right].node_count ? nd.left : nd.right;
        if (3LL * pool[big].node_count > 2 * n) {
            cur = big;
            continue;
        }
        int a, b;
        if (nd.kind == SpTreeNode::Kind::parallel) {
            a = nd.a;
            b = nd.b;
        } else {
            a = pool[big].a;
            b = pool[big].b;
        }
        SeparationPair pair;
        pair.u = std::min(a, b);
        pair.v = std::max(a, b);
        pair.components = components_after_removal(g, {pair.u, pair.v});
        for (const auto& comp : pair.components)
            if (3LL * static_cast<long long>(comp.size()) >= 2 * n)
                throw InternalError("derivation walk produced an oversized component");
        return pair;
    }
    throw InternalError("derivation walk reached a leaf before finding a pair");
}

} // namespace gridcleave
