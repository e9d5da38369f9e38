#include <gridcleave/errors.hpp>
#include <gridcleave/oracle.hpp>
#include <gridcleave/rng.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

namespace gridcleave {

namespace {

std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
    std::vector<std::uint64_t> mask(g.n, 0);
    for (auto [u, v] : g.edges) {
        mask[u] |= 1ull << v;
        mask[v] |= 1ull << u;
    }
    return mask;
}

bool mask_connected(const std::vector<std::uint64_t>& adj, std::uint64_t set) {
    if (set == 0) return false;
    std::uint64_t seen = set & (~set + 1); // lowest bit
    for (;;) {
        std::uint64_t grow = seen;
        std::uint64_t work = seen;
        while (work) {
            int v = std::countr_zero(work);
            work &= work - 1;
            grow |= adj[v] & set;
        }
        if (grow == seen) break;
        seen = grow;
    }
    return seen == set;
}

std::vector<int> mask_to_nodes(std::uint64_t set) {
    std::vector<int> out;
    while (set) {
        out.push_back(std::countr_zero(set));
        set &= set - 1;
    }
    return out;
}

// Enumerates every connected node set containing node 0 exactly once:
// after a candidate is explored as "included", it joins the excluded set
// for the remaining branches at this level.
void enumerate_connected_sets(const std::vector<std::uint64_t>& adj, std::uint64_t all,
                              std::uint64_t set, std::uint64_t excluded,
                              const std::function<void(std::uint64_t)>& visit) {
    visit(set);
    std::uint64_t reach = 0;
    std::uint64_t work = set;
    while (work) {
        int v = std::countr_zero(work);
        work &= work - 1;
        reach |= adj[v];
    }
    std::uint64_t candidates = reach & all & ~set & ~excluded;
    while (candidates) {
        std::uint64_t bit = candidates & (~candidates + 1);
        candidates &= candidates - 1;
        enumerate_connected_sets(adj, all, set | bit, excluded, visit);
        excluded |= bit;
    }
}

} // namespace

void for_each_connected_partition(
    const Graph& g, int cap,
    const std::function<void(const std::vector<int>&, const std::vector<int>&)>& visit) {
    if (cap > 64) cap = 64;
    if (g.n > cap)
        throw CapExceededError("enumeration needs n <= " + std::to_string(cap) + ", got " +
                               std::to_string(g.n));
    if (g.n < 2) return;
    auto adj = adjacency_masks(g);
    const std::uint64_t all = (g.n == 64) ? ~0ull : (1ull << g.n) - 1;
    enumerate_connected_sets(adj, all, 1ull, 0ull, [&](std::uint64_t set) {
        std::uint64_t rest = all & ~set;
        if (rest == 0 || !mask_connected(adj, rest)) return;
        visit(mask_to_nodes(set), mask_to_nodes(rest));
    });
}

std::vector<std::pair<std::vector<int>, std::vector<int>>>
enumerate_connected_partitions(const Graph& g, int cap) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    for_each_connected_partition(
        g, cap, [&](const std::vector<int>& a, const std::vector<int>& b) {
            out.emplace_back(a, b);
        });
    return out;
}

bool verify_partition(const Graph& g, const WeightAssignment& p, const Partition& part,
                      const Rat& c_p, const Rat& c_s, bool centered) {
    std::vector<char> seen(g.n, 0);
    int covered = 0;
    for (const auto& side : part.parts)
        for (int v : side) {
            if (v < 0 || v >= g.n || seen[v])
                throw PreconditionError("partition is not a disjoint cover of V");
            seen[v] = 1;
            ++covered;
        }
    if (covered != g.n) throw PreconditionError("partition is not a disjoint cover of V");
    if (centered && part.parts.size() != 2)
        throw PreconditionError("centered verification needs exactly two parts");

    int min_size = g.n, max_size = 0;
    for (std::size_t i = 0; i < part.parts.size(); ++i) {
        const auto& side = part.parts[i];
        if (side.empty()) return false;
        if (!connected_induced(g, side)) return false;
        Rat sum = weight_sum(p, side);
        Rat imbalance = centered ? rat_abs(sum - p.total / 2) : rat_abs(sum);
        if (imbalance > c_p) return false;
        min_size = std::min(min_size, static_cast<int>(side.size()));
        max_size = std::max(max_size, static_cast<int>(side.size()));
    }
    return Rat(max_size) <= c_s * min_size;
}

std::vector<FrontierPoint> best_frontier(const Graph& g, const WeightAssignment& p,
                                         bool centered, int cap) {
    std::vector<FrontierPoint> frontier;
    Rat half_total = p.total / 2;
    for_each_connected_partition(g, cap, [&](const std::vector<int>& a,
                                             const std::vector<int>& b) {
        Rat sa = weight_sum(p, a);
        Rat sb = p.total - sa;
        Rat imbalance = centered ? std::max(rat_abs(sa - half_total), rat_abs(sb - half_total))
                                 : std::max(rat_abs(sa), rat_abs(sb));
        auto na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
        Rat ratio = Rat(std::max(na, nb)) / Rat(std::min(na, nb));
        for (const auto& f : frontier)
            if (f.imbalance <= imbalance && f.ratio <= ratio) return; // dominated or equal
        std::erase_if(frontier, [&](const FrontierPoint& f) {
            return imbalance <= f.imbalance && ratio <= f.ratio;
        });
        FrontierPoint pt;
        pt.imbalance = imbalance;
        pt.ratio = ratio;
        pt.witness = make_partition(g, p, {a, b});
        frontier.push_back(std::move(pt));
    });
    std::sort(frontier.begin(), frontier.end(),
              [](const FrontierPoint& x, const FrontierPoint& y) {
                  return x.imbalance < y.imbalance;
              });
    return frontier;
}

bool frontier_admits(const std::vector<FrontierPoint>& frontier, const Rat& c_p,
                     const Rat& c_s) {
    return std::any_of(frontier.begin(), frontier.end(), [&](const FrontierPoint& f) {
        return f.imbalance <= c_p && f.ratio <= c_s;
    });
}

// ------------------------------------------------------------------ fig. 1

namespace {

Graph fig1_graph(int s, int t) {
    const int paths = 2 * s + 1;
    const int len = 4 * t + 2; // interior nodes per path
    const int n = 2 + paths * len;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < paths; ++i) {
        int first = 2 + i * len;
        edges.emplace_back(0, first);
        for (int j = 0; j + 1 < len; ++j) edges.emplace_back(first + j, first + j + 1);
        edges.emplace_back(first + len - 1, 1);
    }
    return make_graph(n, std::move(edges));
}

// Candidate +-1 patterns. Node 0 is the terminal every path starts from;
// interiors of each path are listed in order away from it.
std::vector<Rat> fig1_weights(int schema, int s, int t) {
    const int paths = 2 * s + 1;
    const int len = 4 * t + 2;
    std::vector<Rat> w(2 + paths * len, Rat(0));
    auto interior = [&](int path, int j) -> Rat& { return w[2 + path * len + j]; };
    switch (schema) {
    case 0: // terminals +1/-1; each path: half +1 then half -1
        w[0] = 1;
        w[1] = -1;
        for (int i = 0; i < paths; ++i)
            for (int j = 0; j < len; ++j) interior(i, j) = (j < len / 2) ? 1 : -1;
        break;
    case 1: // terminals +1/-1; alternating interiors starting -1
        w[0] = 1;
        w[1] = -1;
        for (int i = 0; i < paths; ++i)
            for (int j = 0; j < len; ++j) interior(i, j) = (j % 2 == 0) ? -1 : 1;
        break;
    case 2: // terminals -1/+1; each path: half -1 then half +1
        w[0] = -1;
        w[1] = 1;
        for (int i = 0; i < paths; ++i)
            for (int j = 0; j < len; ++j) interior(i, j) = (j < len / 2) ? -1 : 1;
        break;
    default:
        throw InternalError("unknown weight schema");
    }
    return w;
}

bool fig1_schema_ok(int schema) {
    // Smallest ratio-floor instance: no zero-imbalance split tighter than
    // ratio n/2 - 1.
    {
        Graph g = fig1_graph(1, 0);
        auto p = make_weights(fig1_weights(schema, 1, 0));
        if (p.total != 0) return false;
        auto frontier = best_frontier(g, p, false, 64);
        Rat floor = Rat(g.n) / 2 - 1;
        for (const auto& f : frontier)
            if (f.imbalance == 0 && f.ratio < floor) return false;
        bool has_zero = std::any_of(frontier.begin(), frontier.end(),
                                    [](const FrontierPoint& f) { return f.imbalance == 0; });
        if (!has_zero) return false; // zero imbalance must be possible at ratio n/2-1
    }
    // Smallest imbalance-floor instance: no equal split tighter than n/6.
    {
        Graph g = fig1_graph(1, 1);
        auto p = make_weights(fig1_weights(schema, 1, 1));
        if (p.total != 0) return false;
        Rat floor = Rat(g.n) / 6;
        bool bad = false;
        for_each_connected_partition(g, 64, [&](const std::vector<int>& a,
                                                const std::vector<int>& b) {
            if (bad || a.size() != b.size()) return;
            if (rat_abs(weight_sum(p, a)) < floor) bad = true;
        });
        if (bad) return false;
    }
    return true;
}

int fig1_selected_schema() {
    static const int selected = [] {
        for (int schema = 0; schema < 3; ++schema)
            if (fig1_schema_ok(schema)) return schema;
        throw InternalError("no weight schema pins both trade-off floors");
    }();
    return selected;
}

} // namespace

Instance gen_fig1(int s, int t) {
    if (s < 1 || t < 0) throw PreconditionError("gen_fig1 needs s >= 1, t >= 0");
    int schema = fig1_selected_schema();
    return Instance{fig1_graph(s, t), make_weights(fig1_weights(schema, s, t))};
}

// ------------------------------------------------------------- gen_random

namespace {

void add_random_chords(std::vector<std::pair<int, int>>& edges, int n, int count,
                       SplitMix64& rng) {
    auto has = [&](int u, int v) {
        return std::any_of(edges.begin(), edges.end(), [&](const std::pair<int, int>& e) {
            return (e.first == u && e.second == v) || (e.first == v && e.second == u);
        });
    };
    for (int k = 0; k < count; ++k) {
        int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (u == v || has(u, v)) continue;
        edges.emplace_back(u, v);
    }
}

Graph random_3_connected(int n, SplitMix64& rng) {
    std::vector<std::pair<int, int>> edges;
    const bool prism_ok = n >= 6 && n % 2 == 0;
    const bool use_prism = prism_ok && rng.below(2) == 0;
    if (use_prism) {
        int half = n / 2;
        for (int i = 0; i < half; ++i) {
            edges.emplace_back(i, (i + 1) % half);
            edges.emplace_back(half + i, half + (i + 1) % half);
            edges.emplace_back(i, half + i);
        }
        // Half the prisms stay chord-free (triangle-free when n >= 8).
        if (rng.below(2) == 0) add_random_chords(edges, n, 1 + static_cast<int>(rng.below(3)), rng);
    } else {
        int hub = n - 1;
        for (int i = 0; i + 1 < n - 1; ++i) edges.emplace_back(i, i + 1);
        if (n - 1 >= 3) edges.emplace_back(n - 2, 0);
        for (int i = 0; i < n - 1; ++i) edges.emplace_back(hub, i);
        add_random_chords(edges, n, static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 2 + 1))), rng);
    }
    return make_graph(n, std::move(edges));
}

Graph random_2_connected(int n, SplitMix64& rng) {
    const std::uint64_t variant = rng.below(3);
    if (variant == 0 && n >= 6) {
        // Subdivided 3-connected core: wheel on m nodes, each extra node
        // splits a random edge.
        int m = 4 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 4 + 1)));
        if (m > n) m = n;
        std::vector<std::pair<int, int>> edges;
        int hub = m - 1;
        for (int i = 0; i + 1 < m - 1; ++i) edges.emplace_back(i, i + 1);
        edges.emplace_back(m - 2, 0);
        for (int i = 0; i < m - 1; ++i) edges.emplace_back(hub, i);
        int next = m;
        while (next < n) {
            std::size_t idx = rng.below(edges.size());
            auto [u, v] = edges[idx];
            edges[idx] = {u, next};
            edges.emplace_back(next, v);
            ++next;
        }
        return make_graph(n, std::move(edges));
    }
    // Cycle seed plus open ears / chords.
    int base = std::min<int>(n, 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 2))));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < base; ++i) edges.emplace_back(i, (i + 1) % base);
    int next = base;
    while (next < n) {
        int remaining = n - next;
        int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(remaining)));
        int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(next)));
        int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(next)));
        if (a == b) b = (a + 1) % next;
        int prev = a;
        for (int j = 0; j < len; ++j) {
            edges.emplace_back(prev, next);
            prev = next;
            ++next;
        }
        edges.emplace_back(prev, b);
    }
    if (variant == 2) add_random_chords(edges, n, 1 + static_cast<int>(rng.below(3)), rng);
    return make_graph(n, std::move(edges));
}

} // namespace

Instance gen_random(int n, int connectivity, std::uint64_t seed) {
    if (connectivity != 2 && connectivity != 3)
        throw PreconditionError("connectivity level must be 2 or 3");
    if (n < 4 || n % 2 != 0)
        throw PreconditionError("balanced +-1 generation needs even n >= 4");
    SplitMix64 rng((static_cast<std::uint64_t>(n) << 40) ^
                   (static_cast<std::uint64_t>(connectivity) << 32) ^ seed);
    Graph g = connectivity == 3 ? random_3_connected(n, rng) : random_2_connected(n, rng);
    if (!is_k_connected(g, connectivity))
        throw InternalError("generator produced a graph below the requested connectivity");
    std::vector<Rat> w(n);
    for (int i = 0; i < n; ++i) w[i] = (i < n / 2) ? 1 : -1;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<Rat> shuffled(n);
    for (int i = 0; i < n; ++i) shuffled[order[i]] = w[i];
    return Instance{std::move(g), make_weights(std::move(shuffled))};
}

} // namespace gridcleave
