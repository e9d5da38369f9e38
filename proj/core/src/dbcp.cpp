#include <gridcleave/dbcp.hpp>

#include <gridcleave/embedding.hpp>
#include <gridcleave/errors.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gridcleave {

namespace {

bool member(const std::vector<int>& sorted, int x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

std::vector<int> complement_nodes(int n, const std::vector<int>& taken) {
    std::vector<char> in(n, 0);
    for (int x : taken) in[x] = 1;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n) - taken.size());
    for (int x = 0; x < n; ++x)
        if (!in[x]) out.push_back(x);
    return out;
}

Partition two_part(const Graph& g, const WeightAssignment& p, std::vector<int> a,
                   std::vector<int> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return make_partition(g, p, {std::move(a), std::move(b)});
}

DbcpResult finish(const Graph& g, const WeightAssignment& p, Partition part, bool centered,
                  std::vector<std::string> trace, unsigned long long seed) {
    DbcpResult r;
    r.cp_achieved = partition_imbalance(g, p, part, centered);
    r.cs_achieved = partition_ratio(part);
    r.partition = std::move(part);
    r.trace = std::move(trace);
    r.seed = seed;
    return r;
}

void require_sizes(const Graph& g, const WeightAssignment& p, const char* who) {
    if (static_cast<int>(p.value.size()) != g.n)
        throw PreconditionError(std::string(who) + ": weight count must match the node count");
}

} // namespace

Rat partition_imbalance(const Graph&, const WeightAssignment& p, const Partition& part,
                        bool centered) {
    if (centered && part.parts.size() != 2)
        throw PreconditionError("centered imbalance is defined for two parts");
    Rat half = p.total / 2;
    Rat worst(0);
    for (const Rat& s : part.sums) {
        Rat dev = s;
        if (centered) dev -= half;
        Rat a = rat_abs(dev);
        if (a > worst) worst = a;
    }
    return worst;
}

Rat partition_ratio(const Partition& part) {
    if (part.sizes.empty()) throw PreconditionError("partition_ratio needs at least one part");
    int mx = part.sizes.front(), mn = part.sizes.front();
    for (int s : part.sizes) {
        mx = std::max(mx, s);
        mn = std::min(mn, s);
    }
    if (mn == 0) throw PreconditionError("partition_ratio needs nonempty parts");
    return Rat(mx) / Rat(mn);
}

// ----------------------------------------------------------- cut triples
//
// Both the plain and the weighted constructions run on a quotient view; the
// plain one wraps the graph as a quotient with empty interiors, which makes
// the zero-weight weighted triple coincide with it exactly.

namespace {

struct QuotientView {
    Graph skel;
    std::vector<int> orig_of, quot_of;
    std::vector<std::vector<int>> wq; // skeleton pair -> summed parallel interiors
    int total_n = 0;
};

QuotientView make_view(const ContractedGraph& q, int total_n) {
    QuotientView v;
    v.skel = q.skeleton(v.orig_of, v.quot_of);
    v.wq.assign(v.skel.n, std::vector<int>(v.skel.n, 0));
    for (const auto& e : q.edges) {
        int a = v.quot_of[e.u], b = v.quot_of[e.v];
        v.wq[a][b] += e.weight();
        v.wq[b][a] += e.weight();
    }
    v.total_n = total_n;
    return v;
}

// Nodes plus enclosed edge weights, in skeleton ids.
int weighted_size_skel(const QuotientView& v, const std::vector<int>& s) {
    int total = static_cast<int>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (v.skel.has_edge(s[i], s[j])) total += v.wq[s[i]][s[j]];
    return total;
}

CutTriple assemble_triple(const QuotientView& v, int w, int a, int b, std::vector<int> v2skel) {
    std::sort(v2skel.begin(), v2skel.end());
    if (2 * weighted_size_skel(v, v2skel) > v.total_n)
        throw InternalError("cut triple: weighted size bound violated");
    CutTriple ct;
    ct.w = v.orig_of[w];
    int ou = v.orig_of[a], ov = v.orig_of[b];
    ct.u = std::min(ou, ov);
    ct.v = std::max(ou, ov);
    std::vector<char> in2(v.skel.n, 0);
    for (int x : v2skel) in2[x] = 1;
    for (int x = 0; x < v.skel.n; ++x)
        (in2[x] ? ct.v2 : ct.v1).push_back(v.orig_of[x]);
    std::sort(ct.v1.begin(), ct.v1.end());
    std::sort(ct.v2.begin(), ct.v2.end());
    return ct;
}

CutTriple weighted_core(const ContractedGraph& q, int total_n) {
    QuotientView v = make_view(q, total_n);
    const Graph& sk = v.skel;
    const int ns = sk.n;
    if (ns < 4) throw PreconditionError("cut triple needs at least four nodes");
    if (!is_k_connected(sk, 3)) throw PreconditionError("cut triple needs a 3-connected graph");

    auto [t0, r0] = sk.edges.front();
    int avoid = 0;
    while (avoid == t0 || avoid == r0) ++avoid;
    std::vector<int> cyc = nonseparating_induced_cycle(sk, t0, r0, avoid);
    const int c = static_cast<int>(cyc.size());
    std::vector<char> on_cycle(ns, 0);
    std::vector<int> pos_of(ns, -1);
    for (int i = 0; i < c; ++i) {
        on_cycle[cyc[i]] = 1;
        pos_of[cyc[i]] = i;
    }
    const int wcyc = weighted_size_skel(v, cyc);

    if (2 * wcyc <= total_n + 2) {
        // drop the smallest cycle node; its cycle neighbors become u, v
        int best = 0;
        for (int i = 1; i < c; ++i)
            if (v.orig_of[cyc[i]] < v.orig_of[cyc[best]]) best = i;
        int w = cyc[best];
        std::vector<int> v2;
        for (int x : cyc)
            if (x != w) v2.push_back(x);
        return assemble_triple(v, w, cyc[(best + c - 1) % c], cyc[(best + 1) % c],
                               std::move(v2));
    }

    // Arc route: some outside node sees two cycle nodes; the cheapest
    // consecutive arc between two of its neighbors becomes V_2.
    struct Arc {
        int w = -1, a = -1, b = -1;
        std::vector<int> v2;
        int wsize = 0;
    };
    std::optional<Arc> best;
    auto key = [&](const Arc& x) {
        int ou = std::min(v.orig_of[x.a], v.orig_of[x.b]);
        int ov = std::max(v.orig_of[x.a], v.orig_of[x.b]);
        return std::array<int, 4>{x.wsize, v.orig_of[x.w], ou, ov};
    };
    for (int w = 0; w < ns; ++w) {
        if (on_cycle[w]) continue;
        std::vector<int> ps;
        for (int nb : sk.adj[w])
            if (on_cycle[nb]) ps.push_back(pos_of[nb]);
        if (ps.size() < 2) continue;
        std::sort(ps.begin(), ps.end());
        for (std::size_t i = 0; i < ps.size(); ++i) {
            int from = ps[i], to = ps[(i + 1) % ps.size()];
            Arc cand;
            cand.w = w;
            cand.a = cyc[from];
            cand.b = cyc[to];
            cand.v2 = {cand.a, cand.b};
            for (int j = (from + 1) % c; j != to; j = (j + 1) % c) cand.v2.push_back(cyc[j]);
            cand.wsize = weighted_size_skel(v, cand.v2);
            if (!best || key(cand) < key(*best)) best = std::move(cand);
        }
    }
    if (best) return assemble_triple(v, best->w, best->a, best->b, std::move(best->v2));

    // Every outside node sees at most one cycle node: find one with exactly
    // one that is not a cutpoint of the outside graph, via a spanning tree
    // leaf or the endpoints of the longest tree path between marked nodes.
    std::vector<int> outside;
    for (int x = 0; x < ns; ++x)
        if (!on_cycle[x]) outside.push_back(x);
    std::vector<int> marked;
    for (int x : outside) {
        int cnt = 0;
        for (int nb : sk.adj[x])
            if (on_cycle[nb]) ++cnt;
        if (cnt == 1) marked.push_back(x);
    }
    if (marked.empty()) throw InternalError("cut triple: no outside node touches the cycle");

    // BFS spanning tree of the outside graph, rooted at its smallest node
    std::vector<std::vector<int>> tree(ns);
    {
        std::vector<char> vis(ns, 0);
        std::vector<int> queue{outside.front()};
        vis[outside.front()] = 1;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            int x = queue[h];
            for (int nb : sk.adj[x]) {
                if (on_cycle[nb] || vis[nb]) continue;
                vis[nb] = 1;
                tree[x].push_back(nb);
                tree[nb].push_back(x);
                queue.push_back(nb);
            }
        }
        if (queue.size() != outside.size())
            throw InternalError("cut triple: outside graph disconnected");
    }

    std::vector<int> candidates;
    for (int x : marked)
        if (tree[x].size() == 1) candidates.push_back(x);
    if (candidates.empty()) {
        // longest tree path between marked nodes
        auto tree_dist = [&](int src) {
            std::vector<int> dist(ns, -1);
            std::vector<int> queue{src};
            dist[src] = 0;
            for (std::size_t h = 0; h < queue.size(); ++h)
                for (int nb : tree[queue[h]])
                    if (dist[nb] < 0) {
                        dist[nb] = dist[queue[h]] + 1;
                        queue.push_back(nb);
                    }
            return dist;
        };
        int bd = -1, bp = -1, bq = -1;
        for (int m : marked) {
            std::vector<int> dist = tree_dist(m);
            for (int o : marked) {
                if (o == m) continue;
                int lo = std::min(v.orig_of[m], v.orig_of[o]);
                int hi = std::max(v.orig_of[m], v.orig_of[o]);
                if (dist[o] > bd || (dist[o] == bd && std::make_pair(lo, hi) <
                                                          std::make_pair(v.orig_of[bp],
                                                                         v.orig_of[bq]))) {
                    bd = dist[o];
                    bp = v.orig_of[m] == lo ? m : o;
                    bq = v.orig_of[m] == lo ? o : m;
                }
            }
        }
        if (bp < 0) throw InternalError("cut triple: lone marked node off the tree");
        candidates = {bp, bq};
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](int a, int b) { return v.orig_of[a] < v.orig_of[b]; });
    int w = -1;
    for (int cand : candidates) {
        std::vector<int> rest;
        for (int x : outside)
            if (x != cand) rest.push_back(x);
        if (connected_induced(sk, rest)) {
            w = cand;
            break;
        }
    }
    if (w < 0) throw InternalError("cut triple: both path endpoints are cutpoints");
    std::vector<int> outnbs;
    for (int nb : sk.adj[w])
        if (!on_cycle[nb]) outnbs.push_back(nb);
    if (outnbs.size() < 2) throw InternalError("cut triple: marked node lacks outside degree");
    std::sort(outnbs.begin(), outnbs.end(),
              [&](int a, int b) { return v.orig_of[a] < v.orig_of[b]; });
    std::vector<int> v2;
    for (int x : outside)
        if (x != w) v2.push_back(x);
    return assemble_triple(v, w, outnbs[0], outnbs[1], std::move(v2));
}

ContractedGraph trivial_quotient(const Graph& g) {
    ContractedGraph q;
    q.nodes.resize(g.n);
    std::iota(q.nodes.begin(), q.nodes.end(), 0);
    for (const auto& [a, b] : g.edges) {
        ContractedGraph::Edge e;
        e.u = a;
        e.v = b;
        q.edges.push_back(std::move(e));
    }
    return q;
}

} // namespace

CutTriple cut_triple(const Graph& g) {
    return weighted_core(trivial_quotient(g), g.n);
}

bool check_cut_triple(const Graph& g, const CutTriple& ct) {
    auto in_range = [&](int x) { return 0 <= x && x < g.n; };
    if (!in_range(ct.u) || !in_range(ct.v) || !in_range(ct.w)) return false;
    if (ct.u == ct.v || ct.u == ct.w || ct.v == ct.w) return false;
    std::vector<char> seen(g.n, 0);
    for (const auto* side : {&ct.v1, &ct.v2}) {
        if (!std::is_sorted(side->begin(), side->end())) return false;
        for (int x : *side) {
            if (!in_range(x) || seen[x]) return false;
            seen[x] = 1;
        }
    }
    if (ct.v1.size() + ct.v2.size() != static_cast<std::size_t>(g.n)) return false;
    if (!member(ct.v1, ct.w) || !member(ct.v2, ct.u) || !member(ct.v2, ct.v)) return false;
    if (!g.has_edge(ct.u, ct.w) || !g.has_edge(ct.v, ct.w)) return false;
    if (2 * static_cast<int>(ct.v2.size()) > g.n) return false;
    return connected_induced(g, ct.v1) && connected_induced(g, ct.v2);
}

int expanded_size(const ContractedGraph& q, const std::vector<int>& nodes) {
    std::vector<int> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    int total = static_cast<int>(sorted.size());
    for (const auto& e : q.edges)
        if (member(sorted, e.u) && member(sorted, e.v)) total += e.weight();
    return total;
}

CutTriple cut_triple_weighted(const ContractedGraph& q, int total_n) {
    if (total_n != static_cast<int>(q.nodes.size()) + q.total_weight())
        throw PreconditionError(
            "cut_triple_weighted: total_n must count quotient nodes plus interiors");
    for (const auto& e : q.edges)
        if (4 * e.weight() >= total_n)
            throw PreconditionError("cut_triple_weighted needs every edge weight below total_n/4");
    return weighted_core(q, total_n);
}

bool check_cut_triple_weighted(const ContractedGraph& q, int total_n, const CutTriple& ct) {
    for (int x : {ct.u, ct.v, ct.w})
        if (!member(q.nodes, x)) return false;
    if (ct.u == ct.v || ct.u == ct.w || ct.v == ct.w) return false;
    QuotientView v = make_view(q, total_n);
    auto to_skel = [&](const std::vector<int>& side, std::vector<int>& out) {
        for (int x : side) {
            if (!member(q.nodes, x)) return false;
            out.push_back(v.quot_of[x]);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out.size() == side.size();
    };
    std::vector<int> v1s, v2s;
    if (!to_skel(ct.v1, v1s) || !to_skel(ct.v2, v2s)) return false;
    if (v1s.size() + v2s.size() != static_cast<std::size_t>(v.skel.n)) return false;
    for (int x : v1s)
        if (member(v2s, x)) return false;
    if (!member(ct.v1, ct.w) || !member(ct.v2, ct.u) || !member(ct.v2, ct.v)) return false;
    if (!v.skel.has_edge(v.quot_of[ct.u], v.quot_of[ct.w]) ||
        !v.skel.has_edge(v.quot_of[ct.v], v.quot_of[ct.w]))
        return false;
    if (2 * weighted_size_skel(v, v2s) > total_n) return false;
    return connected_induced(v.skel, v1s) && connected_induced(v.skel, v2s);
}

// ----------------------------------------------------- separation-pair walk
//
// Every candidate partition keeps one pair node with a prefix of each
// component's pseudo-path and the other pair node with the matching
// suffixes, so both sides stay connected no matter where any scan stops.
// The scan covers the whole prefix-pair grid inside the size window; if
// the grid anchored at u has no admissible state, the paths are rebuilt
// oriented from v and scanned again before giving up.

namespace {

struct SepWalkOutcome {
    std::vector<int> v1;
    std::vector<std::string> trace;
};

std::optional<SepWalkOutcome> sep_scan(const Graph& g, const WeightAssignment& p,
                                       int q, int anchor, int far,
                                       const std::vector<std::vector<int>>& components,
                                       bool centered) {
    const int n = g.n;
    SepWalkOutcome out;

    std::vector<std::vector<int>> paths;
    for (const auto& comp : components)
        paths.push_back(pseudo_path(g, comp, anchor, far).interior);
    std::sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) {
        return std::make_pair(a.size(), a.front()) < std::make_pair(b.size(), b.front());
    });

    // Split into two sides that each carry at least n/q - 1 interior nodes
    // (up to the integer slack); a single big path becomes its own side.
    std::vector<int> s1, s2; // indices into paths
    if (q * static_cast<int>(paths.back().size()) >= n) {
        for (int i = 0; i + 1 < static_cast<int>(paths.size()); ++i) s1.push_back(i);
        s2.push_back(static_cast<int>(paths.size()) - 1);
        out.trace.push_back("q_split:largest");
    } else {
        long long a = 0, b = 0;
        for (int i = static_cast<int>(paths.size()) - 1; i >= 0; --i) {
            if (a <= b) {
                s1.push_back(i);
                a += static_cast<long long>(paths[i].size());
            } else {
                s2.push_back(i);
                b += static_cast<long long>(paths[i].size());
            }
        }
        out.trace.push_back("q_split:greedy");
    }
    auto flat = [&](const std::vector<int>& idx) {
        std::vector<int> nodes;
        for (int i : idx) nodes.insert(nodes.end(), paths[i].begin(), paths[i].end());
        return nodes;
    };
    std::vector<int> q1 = flat(s1), q2 = flat(s2);
    if (q1.size() < q2.size()) std::swap(q1, q2);
    out.trace.push_back("split_sums:" + std::to_string(q1.size()) + ":" +
                        std::to_string(q2.size()));
    if (q >= 3) {
        // proven floor: each side exceeds n/q - 2 interior nodes
        for (std::size_t sz : {q1.size(), q2.size()})
            if (q * static_cast<long long>(sz + 2) <= n)
                throw InternalError("separation walk: side sum fell below n/q - 2");
    }

    const Rat pmax = max_abs_weight(p);
    const Rat target = p.total / 2;
    const int interior = n - 2;
    // |V_1| = 1 + s and |V_2| = n - 1 - s must both reach ceil(n/q)
    const int lo = std::max((n + q - 1) / q - 1, 0);
    const int hi = std::min(n - (n + q - 1) / q - 1, interior);
    if (lo > hi) return std::nullopt;

    // mega-path prefix sums with the optional exact-mode negation
    std::vector<int> mega = q1;
    mega.insert(mega.end(), q2.begin(), q2.end());
    Rat sgn(1);
    if (!centered) {
        Rat probe = p[anchor];
        for (int i = 0; i < lo && i < static_cast<int>(mega.size()); ++i)
            probe += p[mega[i]];
        if (probe < 0) {
            sgn = -1;
            out.trace.push_back("negated");
        }
    }
    std::vector<Rat> pre(mega.size() + 1);
    pre[0] = sgn * p[anchor];
    for (std::size_t i = 0; i < mega.size(); ++i) {
        Rat step = sgn * p[mega[i]];
        pre[i + 1] = pre[i] + step;
    }

    auto build_v1 = [&](int a, int b) {
        std::vector<int> v1;
        v1.push_back(anchor);
        v1.insert(v1.end(), q1.begin(), q1.begin() + a);
        v1.insert(v1.end(), q2.begin(), q2.begin() + b);
        return v1;
    };
    auto state_of_prefix = [&](int s) {
        int a = std::min(s, static_cast<int>(q1.size()));
        return std::make_pair(a, s - a);
    };
    // distance of |V_1| = 1 + s from half, for ratio tie-breaks
    auto balance_key = [&](int s) { return std::abs(n - 2 - 2 * s); };

    if (centered) {
        for (int s = lo; s <= hi; ++s) {
            Rat f = pre[s] - target;
            if (rat_abs(f) <= pmax) {
                out.trace.push_back("prefix_band");
                auto [a, b] = state_of_prefix(s);
                out.v1 = build_v1(a, b);
                return out;
            }
        }
    } else {
        std::optional<int> chosen;
        for (int s = lo; s <= hi; ++s) {
            if (pre[s] != 0) continue;
            if (!chosen || std::make_pair(balance_key(s), s) <
                               std::make_pair(balance_key(*chosen), *chosen))
                chosen = s;
        }
        if (chosen) {
            out.trace.push_back("prefix_zero");
            auto [a, b] = state_of_prefix(*chosen);
            out.v1 = build_v1(a, b);
            return out;
        }
    }

    // Transfer scan: the prefix walk only saw the states that fill Q_1
    // first, but any prefix of Q_1 may be combined with any prefix of Q_2.
    // Sweep the whole grid inside the window for the best remaining state.
    const int alen = static_cast<int>(q1.size());
    const int blen = static_cast<int>(q2.size());
    std::vector<Rat> xs(alen + 1), ys(blen + 1);
    for (int a = 0; a < alen; ++a) {
        Rat step = sgn * p[q1[a]];
        xs[a + 1] = xs[a] + step;
    }
    for (int b = 0; b < blen; ++b) {
        Rat step = sgn * p[q2[b]];
        ys[b + 1] = ys[b] + step;
    }
    const Rat base = sgn * p[anchor];

    if (centered) {
        for (int s = lo; s <= hi; ++s) {
            for (int a = std::min(s, alen); a >= 0 && s - a <= blen; --a) {
                Rat f = base + xs[a] + ys[s - a] - target;
                if (rat_abs(f) <= pmax) {
                    out.trace.push_back("transfer_band");
                    out.v1 = build_v1(a, s - a);
                    return out;
                }
            }
        }
        return std::nullopt;
    }

    struct Best {
        Rat abs;
        int bal = 0, a = 0, b = 0;
        bool set = false;
    } best;
    for (int a = 0; a <= alen; ++a) {
        const int bmin = std::max(lo - a, 0), bmax = std::min(hi - a, blen);
        for (int b = bmin; b <= bmax; ++b) {
            Rat cur = base + xs[a] + ys[b];
            Rat av = rat_abs(cur);
            int bal = balance_key(a + b);
            if (!best.set ||
                std::make_pair(av, Rat(bal)) < std::make_pair(best.abs, Rat(best.bal)))
                best = {av, bal, a, b, true};
        }
    }
    if (!best.set || best.abs > 1) return std::nullopt;
    out.trace.push_back(best.abs == 0 ? "transfer_zero" : "transfer_best_one");
    out.v1 = build_v1(best.a, best.b);
    return out;
}

SepWalkOutcome sep_walk(const Graph& g, const WeightAssignment& p, int q,
                        const SeparationPair& pair, bool centered) {
    auto forward = sep_scan(g, p, q, pair.u, pair.v, pair.components, centered);
    if (forward) return std::move(*forward);
    auto flipped = sep_scan(g, p, q, pair.v, pair.u, pair.components, centered);
    if (flipped) {
        flipped->trace.insert(flipped->trace.begin(), "anchor_flip");
        return std::move(*flipped);
    }
    throw InternalError(centered ? "separation walk: no window state inside the band"
                                 : "separation walk: no window state within one");
}

void validate_pair(const Graph& g, int q, const SeparationPair& pair) {
    if (q < 2) throw PreconditionError("separation walk needs q >= 2");
    if (pair.u < 0 || pair.u >= g.n || pair.v < 0 || pair.v >= g.n || pair.u == pair.v)
        throw PreconditionError("separation pair nodes out of range");
    auto norm = [](std::vector<std::vector<int>> comps) {
        for (auto& c : comps) std::sort(c.begin(), c.end());
        std::sort(comps.begin(), comps.end());
        return comps;
    };
    if (norm(pair.components) != norm(components_after_removal(g, {pair.u, pair.v})))
        throw PreconditionError("separation pair components do not match the graph");
    if (pair.components.size() < 2)
        throw PreconditionError("separation pair must split the graph");
    for (const auto& comp : pair.components)
        if (static_cast<long long>(q) * static_cast<long long>(comp.size()) >=
            static_cast<long long>(q - 1) * g.n)
            throw PreconditionError("separation component too large for q");
}

bool pair_fits_q(const Graph& g, int q, const SeparationPair& pair) {
    if (pair.components.size() < 2) return false;
    for (const auto& comp : pair.components)
        if (static_cast<long long>(q) * static_cast<long long>(comp.size()) >=
            static_cast<long long>(q - 1) * g.n)
            return false;
    return true;
}

// Case-1 dispatch: scan the chosen pair first; a single pair can lack any
// admissible prefix state even when the instance is solvable, so every
// other pair that fits the size rule is scanned before the failure stands.
DbcpResult sep_route(const Graph& g, const WeightAssignment& p, int q,
                     const SeparationPair& first, bool centered) {
    auto solve = [&](const SeparationPair& pair) {
        SepWalkOutcome out = sep_walk(g, p, q, pair, centered);
        Partition part = two_part(g, p, out.v1, complement_nodes(g.n, out.v1));
        return finish(g, p, std::move(part), centered, std::move(out.trace), 0);
    };
    try {
        DbcpResult res = solve(first);
        res.trace.insert(res.trace.begin(), "case1_separation");
        return res;
    } catch (const InternalError&) {
        for (const auto& cand : find_separation_pairs(g)) {
            if ((cand.u == first.u && cand.v == first.v) ||
                (cand.u == first.v && cand.v == first.u))
                continue;
            if (!pair_fits_q(g, q, cand)) continue;
            try {
                DbcpResult res = solve(cand);
                res.trace.insert(res.trace.begin(), "pair_retry");
                res.trace.insert(res.trace.begin(), "case1_separation");
                return res;
            } catch (const InternalError&) {
            }
        }
        throw;
    }
}

} // namespace

DbcpResult dbcp_sep_case(const Graph& g, const WeightAssignment& p, int q,
                         const SeparationPair& pair) {
    require_sizes(g, p, "dbcp_sep_case");
    if (!is_pm1(p) || p.total != 0)
        throw PreconditionError("dbcp_sep_case needs +-1 weights summing to zero");
    validate_pair(g, q, pair);
    SepWalkOutcome out = sep_walk(g, p, q, pair, false);
    Partition part = two_part(g, p, out.v1, complement_nodes(g.n, out.v1));
    return finish(g, p, std::move(part), false, std::move(out.trace), 0);
}

// ------------------------------------------------------------ 3-connected

namespace {

struct ThreeEmbedding {
    std::vector<Point> pts;
    unsigned long long seed = 0;
};

std::optional<std::array<int, 3>> first_triangle(const Graph& g) {
    for (const auto& [a, b] : g.edges) {
        const auto& na = g.adj[a];
        const auto& nb = g.adj[b];
        std::size_t i = 0, j = 0;
        while (i < na.size() && j < nb.size()) {
            if (na[i] == nb[j]) return std::array<int, 3>{a, b, na[i]};
            if (na[i] < nb[j])
                ++i;
            else
                ++j;
        }
    }
    return std::nullopt;
}

ThreeEmbedding embed_3(const Graph& g, unsigned long long seed,
                       std::vector<std::string>& trace) {
    if (auto tri = first_triangle(g)) {
        trace.push_back("triangle");
        SeededEmbedding se = general_position_embedding(g, *tri, seed);
        return {std::move(se.emb.point), se.seed};
    }
    trace.push_back("cut_triple");
    CutTriple ct = cut_triple(g);
    if (!check_cut_triple(g, ct)) throw InternalError("cut triple failed validation");
    TailoredEmbedding te = tailored_embedding(g, ct.v1, ct.v2, ct.u, ct.v, ct.w, seed);
    return {std::move(te.emb.point), te.seed};
}

void assert_connected_sides(const Graph& g, const Partition& part) {
    if (!connected_induced(g, part.parts[0]) || !connected_induced(g, part.parts[1]))
        throw InternalError("swept side disconnected");
}

} // namespace

DbcpResult dbcp_3(const Graph& g, const WeightAssignment& p, unsigned long long seed) {
    require_sizes(g, p, "dbcp_3");
    if (g.n < 4 || !is_k_connected(g, 3))
        throw PreconditionError("dbcp_3 needs a 3-connected graph");
    if (!is_pm1(p) || p.total != 0)
        throw PreconditionError("dbcp_3 needs +-1 weights summing to zero");
    std::vector<std::string> trace;
    ThreeEmbedding emb = embed_3(g, seed, trace);
    int k = g.n / 2;
    if (g.n % 4 != 0) {
        k += 1;
        trace.push_back("k_plus_one");
    }
    auto gaps = gap_directions(critical_directions(emb.pts));
    const int half = static_cast<int>(gaps.size()) / 2;
    for (int d = 0; d <= half; ++d) {
        Partition part = sweep_split(g, p, emb.pts, gaps[d], k);
        assert_connected_sides(g, part);
        if (part.sums[0] == 0) {
            trace.push_back("sweep_zero");
            return finish(g, p, std::move(part), false, std::move(trace), emb.seed);
        }
    }
    throw InternalError("no zero crossing within a half turn");
}

DbcpResult dbcp_3_general(const Graph& g, const WeightAssignment& p, unsigned long long seed) {
    require_sizes(g, p, "dbcp_3_general");
    if (g.n < 4 || !is_k_connected(g, 3))
        throw PreconditionError("dbcp_3_general needs a 3-connected graph");
    std::vector<std::string> trace;
    ThreeEmbedding emb = embed_3(g, seed, trace);
    const int k = (g.n + 1) / 2;
    const Rat pmax = max_abs_weight(p);
    const Rat target = p.total / 2;
    auto gaps = gap_directions(critical_directions(emb.pts));
    const int half = static_cast<int>(gaps.size()) / 2;
    for (int d = 0; d <= half; ++d) {
        Partition part = sweep_split(g, p, emb.pts, gaps[d], k);
        assert_connected_sides(g, part);
        Rat f = part.sums[0] - target;
        if (rat_abs(f) <= pmax) {
            trace.push_back("band_hit");
            return finish(g, p, std::move(part), true, std::move(trace), emb.seed);
        }
    }
    throw InternalError("no band entry within a half turn");
}

// ------------------------------------------------- 2-connected, contracted
//
// Case 2 of the contraction dichotomy: embed the 3-connected quotient with
// per-edge strand counts, re-expand every pseudo-path onto its edge segment
// (cross edges only above L1), and sweep the full point set. A sign flip
// that jumps the band can only happen at a direction perpendicular to a
// contracted segment; the repair walks that segment from the surviving side.

namespace {

struct SegGroup {
    int qa = -1, qb = -1;        // skeleton ids, qa < qb
    bool cross = false;
    std::vector<int> oriented;   // interiors in order qa -> qb, original ids
};

struct ExpandedSetup {
    CutTriple ct; // original ids
    Graph skel;
    std::vector<int> orig_of, quot_of;
    std::vector<int> mult;
    std::vector<SegGroup> groups;
};

int edge_index(const Graph& g, int u, int v) {
    auto key = std::minmax(u, v);
    auto it = std::lower_bound(g.edges.begin(), g.edges.end(),
                               std::make_pair(key.first, key.second));
    if (it == g.edges.end() || *it != std::make_pair(key.first, key.second))
        throw InternalError("edge lookup missed");
    return static_cast<int>(it - g.edges.begin());
}

ExpandedSetup make_expanded_setup(const Graph& g, const ContractedGraph& q) {
    ExpandedSetup s;
    s.ct = cut_triple_weighted(q, g.n);
    if (!check_cut_triple_weighted(q, g.n, s.ct))
        throw InternalError("weighted cut triple failed validation");
    s.skel = q.skeleton(s.orig_of, s.quot_of);
    s.mult.assign(s.skel.m(), 0);
    std::map<std::pair<int, int>, std::size_t> group_at;
    for (const auto& e : q.edges) {
        int a = s.quot_of[e.u], b = s.quot_of[e.v];
        auto key = std::minmax(a, b);
        s.mult[edge_index(s.skel, a, b)] += 1;
        if (e.interior.empty()) continue;
        auto it = group_at.find(key);
        if (it == group_at.end()) {
            SegGroup gr;
            gr.qa = key.first;
            gr.qb = key.second;
            gr.cross = member(s.ct.v1, s.orig_of[gr.qa]) != member(s.ct.v1, s.orig_of[gr.qb]);
            it = group_at.emplace(key, s.groups.size()).first;
            s.groups.push_back(std::move(gr));
        }
        SegGroup& gr = s.groups[it->second];
        if (a == key.first)
            gr.oriented.insert(gr.oriented.end(), e.interior.begin(), e.interior.end());
        else
            gr.oriented.insert(gr.oriented.end(), e.interior.rbegin(), e.interior.rend());
    }
    return s;
}

// Interiors evenly spaced along their segment; cross segments use only the
// piece strictly above L1 so the expanded split keeps the half-plane shape.
std::optional<std::vector<Point>> place_expanded(const Graph& g, const ExpandedSetup& s,
                                                 const Embedding& emb) {
    std::vector<Point> pts(g.n, Point{Rat(0), Rat(0)});
    for (int qi = 0; qi < s.skel.n; ++qi) pts[s.orig_of[qi]] = emb.point[qi];
    const Rat half = Rat(1) / Rat(2);
    for (const auto& gr : s.groups) {
        Point from = emb.point[gr.qa];
        Point to = emb.point[gr.qb];
        std::vector<int> order = gr.oriented;
        if (gr.cross) {
            if (!member(s.ct.v1, s.orig_of[gr.qa])) {
                std::swap(from, to);
                std::reverse(order.begin(), order.end());
            }
            if (from.second == half) return std::nullopt; // no room above the line
            Rat lam = (from.second - half) / (from.second - to.second);
            to = Point{from.first + lam * (to.first - from.first),
                       from.second + lam * (to.second - from.second)};
        }
        const int t = static_cast<int>(order.size());
        for (int i = 0; i < t; ++i) {
            Rat lam = Rat(i + 1) / Rat(t + 1);
            pts[order[i]] = Point{from.first + lam * (to.first - from.first),
                                  from.second + lam * (to.second - from.second)};
        }
    }
    std::vector<Point> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i] == sorted[i + 1]) return std::nullopt;
    return pts;
}

// Node set of every group whose segment is perpendicular to dir.
std::vector<int> segment_nodes_perp(const ExpandedSetup& s, const Embedding& emb,
                                    const Direction& dir) {
    std::vector<int> nodes;
    for (const auto& gr : s.groups) {
        Rat dx = emb.point[gr.qb].first - emb.point[gr.qa].first;
        Rat dy = emb.point[gr.qb].second - emb.point[gr.qa].second;
        Rat dot = dx * Rat(dir.dx) + dy * Rat(dir.dy);
        if (dot != 0) continue;
        nodes.push_back(s.orig_of[gr.qa]);
        nodes.push_back(s.orig_of[gr.qb]);
        nodes.insert(nodes.end(), gr.oriented.begin(), gr.oriented.end());
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

// Accept only expansions whose critical structure the sweep can handle.
// Tied pairs at a critical merge into blocks that reverse as one; a block
// crossing the size boundary shifts the running sum by up to its weight, so
// any block larger than a plain swap must lie inside the contracted
// segments perpendicular to that critical, where the repair knows how to
// walk it. Loose two-blocks (evenly spaced interiors of sibling segments
// line up by construction) shift the sum by at most one step and are safe.
bool sweepable_expansion(const Graph& g, const ExpandedSetup& s, const Embedding& emb) {
    auto pts = place_expanded(g, s, emb);
    if (!pts) return false;
    std::vector<int> parent(g.n);
    std::function<int(int)> find = [&](int x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& cd : critical_directions(*pts)) {
        std::vector<int> seg = segment_nodes_perp(s, emb, cd.dir);
        std::iota(parent.begin(), parent.end(), 0);
        for (const auto& pr : cd.pairs) parent[find(pr.first)] = find(pr.second);
        std::vector<int> block_size(g.n, 0);
        std::vector<char> counted(g.n, 0);
        for (const auto& pr : cd.pairs)
            for (int x : {pr.first, pr.second})
                if (!counted[x]) {
                    counted[x] = 1;
                    block_size[find(x)] += 1;
                }
        for (const auto& pr : cd.pairs)
            for (int x : {pr.first, pr.second})
                if (block_size[find(x)] >= 3 && !member(seg, x)) return false;
    }
    return true;
}

DbcpResult contracted_repair(const Graph& g, const WeightAssignment& p, const ExpandedSetup& s,
                             const TailoredEmbedding& te, const std::vector<Point>& pts,
                             const Partition& before, const Partition& after,
                             const Direction& flip, const Direction& dir_before,
                             const Direction& dir_after, bool centered, const Rat& target,
                             const Rat& pmax, std::vector<std::string> trace) {
    trace.push_back("repair_contracted");
    // a flip that jumps the band can only come from segment nodes reordering
    // all at once, so the flip critical is perpendicular to their segments
    std::vector<int> seg = segment_nodes_perp(s, te.emb, flip);
    if (seg.empty()) throw InternalError("sign flip without a contracted segment");

    std::vector<int> base;
    for (int x : before.parts[0])
        if (!member(seg, x)) base.push_back(x);
    {
        std::vector<int> base_after;
        for (int x : after.parts[0])
            if (!member(seg, x)) base_after.push_back(x);
        if (base != base_after) throw InternalError("flip moved nodes off the segments");
    }

    Rat fbase = weight_sum(p, base) - target;
    std::vector<int> v1 = base;
    auto in_band = [&](const Rat& f) -> bool {
        return centered ? rat_abs(f) <= pmax : f == 0;
    };
    if (in_band(fbase)) {
        trace.push_back("repair:base");
    } else {
        // walk into whichever side's segment chunk pulls fbase back toward
        // the band; that side's full value sits on the far side of it
        Rat f_after = weight_sum(p, after.parts[0]) - target;
        const bool heavy = fbase > (centered ? pmax : Rat(0));
        const bool toward_after = heavy ? f_after < 0 : f_after > 0;
        trace.push_back(toward_after ? "repair:toward_after" : "repair:toward_before");
        const Partition& side = toward_after ? after : before;
        const Direction& dir = toward_after ? dir_after : dir_before;
        std::vector<int> rank(g.n, 0);
        {
            std::vector<int> order = projection_order(pts, dir);
            for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
        }
        std::vector<int> chunk;
        for (int x : side.parts[0])
            if (member(seg, x)) chunk.push_back(x);
        std::sort(chunk.begin(), chunk.end(), [&](int a, int b) { return rank[a] < rank[b]; });
        Rat run = fbase;
        bool hit = false;
        for (int x : chunk) {
            run += p[x];
            v1.push_back(x);
            if (in_band(run)) {
                hit = true;
                break;
            }
        }
        if (!hit) throw InternalError("repair walk missed the band");
    }
    Partition part = two_part(g, p, v1, complement_nodes(g.n, v1));
    assert_connected_sides(g, part);
    return finish(g, p, std::move(part), centered, std::move(trace), te.seed);
}

DbcpResult dbcp_2_contracted(const Graph& g, const WeightAssignment& p,
                             const ContractedGraph& q, unsigned long long seed, bool centered,
                             std::vector<std::string> trace) {
    ExpandedSetup s = make_expanded_setup(g, q);
    std::vector<int> v1q, v2q;
    for (int x : s.ct.v1) v1q.push_back(s.quot_of[x]);
    for (int x : s.ct.v2) v2q.push_back(s.quot_of[x]);
    std::sort(v1q.begin(), v1q.end());
    std::sort(v2q.begin(), v2q.end());
    auto extra = [&](const Embedding& emb) -> bool { return sweepable_expansion(g, s, emb); };
    TailoredEmbedding te =
        tailored_embedding(s.skel, v1q, v2q, s.quot_of[s.ct.u], s.quot_of[s.ct.v],
                           s.quot_of[s.ct.w], seed, &s.mult, extra);
    std::vector<Point> pts = *place_expanded(g, s, te.emb);

    const int k = (g.n + 1) / 2;
    const Rat pmax = centered ? max_abs_weight(p) : Rat(1);
    const Rat target = p.total / 2;
    auto crit = critical_directions(pts);
    auto gaps = gap_directions(crit);
    const int half = static_cast<int>(gaps.size()) / 2;
    Partition prev;
    Rat prevf;
    for (int d = 0; d <= half; ++d) {
        Partition part = sweep_split(g, p, pts, gaps[d], k);
        assert_connected_sides(g, part);
        Rat f = part.sums[0] - target;
        if (rat_abs(f) <= pmax) {
            trace.push_back(d == 0 ? "first_direction" : "sweep_hit");
            return finish(g, p, std::move(part), centered, std::move(trace), te.seed);
        }
        if (d > 0 && (f > 0) != (prevf > 0)) {
            // gaps d-1 and d straddle exactly one critical; its canonical
            // form is crit[d % K], which flips sign but not perpendicularity
            const Direction& flip = crit[d % static_cast<int>(crit.size())].dir;
            return contracted_repair(g, p, s, te, pts, prev, part, flip, gaps[d - 1], gaps[d],
                                     centered, target, pmax, std::move(trace));
        }
        prev = std::move(part);
        prevf = f;
    }
    throw InternalError("no crossing within a half turn");
}

} // namespace

DbcpResult dbcp_2(const Graph& g, const WeightAssignment& p, unsigned long long seed) {
    require_sizes(g, p, "dbcp_2");
    if (g.n < 4 || !is_k_connected(g, 2))
        throw PreconditionError("dbcp_2 needs a 2-connected graph");
    if (!is_pm1(p) || p.total != 0)
        throw PreconditionError("dbcp_2 needs +-1 weights summing to zero");
    Decomposition d = decompose_q(g, 4);
    if (d.which == Decomposition::Case::separation_pair) {
        validate_pair(g, 4, d.pair);
        return sep_route(g, p, 4, d.pair, false);
    }
    return dbcp_2_contracted(g, p, d.quotient, seed, false, {"case2_contracted"});
}

DbcpResult dbcp_2_general(const Graph& g, const WeightAssignment& p, unsigned long long seed) {
    require_sizes(g, p, "dbcp_2_general");
    if (g.n < 4 || !is_k_connected(g, 2))
        throw PreconditionError("dbcp_2_general needs a 2-connected graph");
    Decomposition d = decompose_q(g, 4);
    if (d.which == Decomposition::Case::separation_pair) {
        validate_pair(g, 4, d.pair);
        return sep_route(g, p, 4, d.pair, true);
    }
    return dbcp_2_contracted(g, p, d.quotient, seed, true, {"case2_contracted"});
}

DbcpResult dbcp_series_parallel(const Graph& g, const WeightAssignment& p) {
    require_sizes(g, p, "dbcp_series_parallel");
    if (!is_pm1(p) || p.total != 0)
        throw PreconditionError("dbcp_series_parallel needs +-1 weights summing to zero");
    SeparationPair pair = series_parallel_separation_pair(g);
    DbcpResult res = dbcp_sep_case(g, p, 3, pair);
    res.trace.insert(res.trace.begin(), "series_parallel");
    return res;
}

// -------------------------------------------------------------- two colors

TwoColorResult two_color_partition(const Graph& g, const std::vector<int>& red,
                                   const std::vector<int>& blue, unsigned long long seed) {
    std::vector<char> seen(g.n, 0);
    for (const auto* cls : {&red, &blue})
        for (int x : *cls) {
            if (x < 0 || x >= g.n || seen[x])
                throw PreconditionError("red and blue must partition the nodes");
            seen[x] = 1;
        }
    if (red.size() + blue.size() != static_cast<std::size_t>(g.n))
        throw PreconditionError("red and blue must partition the nodes");
    if (red.empty() || blue.empty())
        throw PreconditionError("both color classes must be nonempty");

    std::vector<char> is_red(g.n, 0);
    for (int x : red) is_red[x] = 1;
    const int nr = static_cast<int>(red.size());
    const int nb = static_cast<int>(blue.size());

    TwoColorResult out;
    bool three = g.n >= 4 && is_k_connected(g, 3);
    bool exact = three && nr % 2 == 0 && nb % 2 == 0;
    if (three) {
        std::vector<Rat> w(g.n);
        for (int i = 0; i < g.n; ++i) w[i] = is_red[i] ? Rat(1) : Rat(-1);
        out.result = dbcp_3_general(g, make_weights(std::move(w)), seed);
        out.result.trace.insert(out.result.trace.begin(),
                                exact ? "two_color:exact" : "two_color:off_by_one");
    } else if (is_k_connected(g, 2)) {
        // the smaller class gets +1, the larger -small/large, so the total
        // vanishes and the centered bound caps the per-side ratio deviation
        const bool red_small = nr <= nb;
        Rat small_w(1);
        Rat large_w = -(Rat(std::min(nr, nb)) / Rat(std::max(nr, nb)));
        std::vector<Rat> w(g.n);
        for (int i = 0; i < g.n; ++i)
            w[i] = (static_cast<bool>(is_red[i]) == red_small) ? small_w : large_w;
        out.result = dbcp_2_general(g, make_weights(std::move(w)), seed);
        out.result.trace.insert(out.result.trace.begin(), "two_color:ratio");
    } else {
        throw PreconditionError("two_color_partition needs a 2-connected graph");
    }

    for (int side = 0; side < 2; ++side)
        for (int x : out.result.partition.parts[side])
            (is_red[x] ? out.red_count : out.blue_count)[side] += 1;

    const auto& small_c = nr <= nb ? out.red_count : out.blue_count;
    const auto& large_c = nr <= nb ? out.blue_count : out.red_count;
    Rat frac = Rat(std::min(nr, nb)) / Rat(std::max(nr, nb));
    out.deviation = 0;
    for (int side = 0; side < 2; ++side) {
        Rat dev = rat_abs(Rat(small_c[side]) - frac * Rat(large_c[side]));
        if (dev > out.deviation) out.deviation = dev;
    }

    if (exact) {
        if (2 * out.red_count[0] != nr || 2 * out.blue_count[0] != nb)
            throw InternalError("even color classes must split exactly");
    } else if (three) {
        if (std::abs(2 * out.red_count[0] - nr) > 1 || std::abs(2 * out.blue_count[0] - nb) > 1)
            throw InternalError("color split strayed past one");
    } else if (out.deviation > 1) {
        throw InternalError("color ratio deviation above one");
    }
    return out;
}

} // namespace gridcleave
