#include <gridcleave/bcpi.hpp>
#include <gridcleave/errors.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace gridcleave {

namespace {

WeightAssignment negated(const WeightAssignment& p) {
    std::vector<Rat> values;
    values.reserve(p.value.size());
    for (const Rat& x : p.value) values.push_back(-x);
    return make_weights(std::move(values));
}

// st-numbering order of G[nodes] from s to t, reported in original ids.
// Local ids follow the sorted node list, so the order is deterministic.
std::vector<int> induced_st_order(const Graph& g, std::vector<int> nodes, int s, int t) {
    std::sort(nodes.begin(), nodes.end());
    std::vector<int> local(g.n, -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : g.edges)
        if (local[a] != -1 && local[b] != -1) edges.emplace_back(local[a], local[b]);
    Graph sub = make_graph(static_cast<int>(nodes.size()), std::move(edges));
    StNumbering num = st_numbering(sub, local[s], local[t]);
    std::vector<int> order;
    order.reserve(nodes.size());
    for (int x : num.order) order.push_back(nodes[x]);
    return order;
}

void require_half(const Rat& sum, const Rat& step, const char* where) {
    if (Rat(2) * rat_abs(sum) > step) throw InternalError(std::string(where) +
                                                          ": sum misses the half-weight bound");
}

// Splits V_0 between u and v when the initial cycle already carries
// nonpositive total weight; the remainder (all later ears) becomes V_3.
void split_within_cycle(const WeightAssignment& p, const std::vector<int>& order,
                        std::vector<std::string>& trace, std::vector<int>& set_u,
                        std::vector<int>& set_v) {
    const int s = static_cast<int>(order.size());
    std::vector<Rat> pre(s + 1, Rat(0));
    for (int i = 1; i <= s; ++i) pre[i] = pre[i - 1] + p[order[i - 1]];
    const Rat total = pre[s];
    auto suf = [&](int i) -> Rat { return total - pre[i]; };

    int istar = -1;
    for (int i = 1; i < s; ++i)
        if (pre[i] > Rat(0) && pre[i + 1] <= Rat(0)) {
            istar = i;
            break;
        }
    int jstar = -1;
    for (int i = s - 2; i >= 0; --i)
        if (suf(i) <= Rat(0)) {
            jstar = i;
            break;
        }
    if (istar == -1 || jstar == -1 || istar > jstar)
        throw InternalError("cycle scan indices out of order");

    auto prefix_of = [&](int k) { return std::vector<int>(order.begin(), order.begin() + k); };
    auto suffix_from = [&](int k) { return std::vector<int>(order.begin() + k, order.end()); };

    if (istar == jstar) {
        const Rat step = rat_abs(p[order[istar]]);
        const bool prefix_small = Rat(2) * pre[istar] <= step;
        const bool suffix_small = Rat(2) * suf(istar + 1) <= step;
        if (prefix_small && suffix_small) {
            trace.push_back("i_a:both_small");
            set_u = prefix_of(istar);
            set_v = suffix_from(istar + 1);
        } else if (suffix_small) {
            trace.push_back("i_a:prefix_absorbs");
            require_half(pre[istar + 1], step, "i_a prefix");
            set_u = prefix_of(istar + 1);
            set_v = suffix_from(istar + 1);
        } else if (prefix_small) {
            trace.push_back("i_a:suffix_absorbs");
            require_half(suf(istar), step, "i_a suffix");
            set_u = prefix_of(istar);
            set_v = suffix_from(istar);
        } else {
            throw InternalError("crossing node cannot absorb either side");
        }
        return;
    }

    trace.push_back("i_b");
    const Rat step_i = rat_abs(p[order[istar]]);
    if (Rat(2) * pre[istar] <= step_i) {
        set_u = prefix_of(istar);
    } else {
        require_half(pre[istar + 1], step_i, "i_b prefix");
        set_u = prefix_of(istar + 1);
    }
    const Rat step_j = rat_abs(p[order[jstar]]);
    if (Rat(2) * suf(jstar + 1) <= step_j) {
        set_v = suffix_from(jstar + 1);
    } else {
        require_half(suf(jstar), step_j, "i_b suffix");
        set_v = suffix_from(jstar);
    }
}

// Case p(V_0) > 0: walk the ear prefixes until the running total turns
// nonpositive, then cut within that graph and its pending ear.
void split_with_ear(const Graph& g, const WeightAssignment& p, const EarDecomposition& ed,
                    const std::vector<Rat>& pv, int u, int v, std::vector<std::string>& trace,
                    std::vector<int>& set_u, std::vector<int>& set_v) {
    const int r = static_cast<int>(ed.ears.size()) - 1;
    int j = -1;
    for (int i = 0; i < r - 1; ++i)
        if (pv[i] > Rat(0) && pv[i + 1] <= Rat(0)) {
            j = i;
            break;
        }
    if (j == -1) throw InternalError("ear prefix sums never cross zero before the final ear");

    std::vector<char> in_vj(g.n, 0);
    std::vector<int> vj;
    for (int k = 0; k <= j; ++k)
        for (int node : ed.ears[k])
            if (!in_vj[node]) {
                in_vj[node] = 1;
                vj.push_back(node);
            }

    const auto& ear = ed.ears[j + 1];
    std::vector<int> q(ear.begin() + 1, ear.end() - 1);
    const int t = static_cast<int>(q.size());

    std::vector<int> order = induced_st_order(g, vj, u, v);
    const int s = static_cast<int>(order.size());
    std::vector<int> pos(g.n, 0);
    for (int i = 0; i < s; ++i) pos[order[i]] = i + 1;
    int x = pos[ear.front()], y = pos[ear.back()];
    if (x > y) {
        std::swap(x, y);
        std::reverse(q.begin(), q.end());
    }

    std::vector<Rat> pre(s + 1, Rat(0));
    for (int i = 1; i <= s; ++i) pre[i] = pre[i - 1] + p[order[i - 1]];
    const Rat pvj = pre[s];
    auto suf = [&](int i) -> Rat { return pvj - pre[i]; };
    std::vector<Rat> eq(t + 1, Rat(0));
    for (int i = 1; i <= t; ++i) eq[i] = eq[i - 1] + p[q[i - 1]];
    const Rat ear_total = eq[t];

    auto prefix_of = [&](int k) { return std::vector<int>(order.begin(), order.begin() + k); };
    auto suffix_from = [&](int k) { return std::vector<int>(order.begin() + k, order.end()); };
    auto ear_prefix = [&](int k) { return std::vector<int>(q.begin(), q.begin() + k); };
    auto ear_suffix = [&](int k) { return std::vector<int>(q.begin() + k, q.end()); };
    auto append = [](std::vector<int> base, const std::vector<int>& extra) {
        base.insert(base.end(), extra.begin(), extra.end());
        return base;
    };

    int pi = -1;
    for (int i = 1; i <= y - 2; ++i)
        if (pre[i] > Rat(0) && pre[i + 1] <= Rat(0)) {
            pi = i;
            break;
        }
    int si = -1;
    if (pi == -1)
        for (int i = s - 1; i >= x + 2; --i)
            if (suf(i) > Rat(0) && suf(i - 1) <= Rat(0)) {
                si = i;
                break;
            }

    // Scans the ear for a side whose base sum is strictly positive: the
    // chosen piece keeps the base connected (ear suffixes hang off v_y,
    // ear prefixes off v_x). Returns false when no crossing exists.
    auto ear_rule_down = [&](const Rat& base_sum, std::vector<int>& out,
                             const std::vector<int>& base_nodes) {
        auto gsum = [&](int i) -> Rat { return base_sum + ear_total - eq[i]; };
        for (int i = 1; i <= t; ++i)
            if (gsum(i) > Rat(0) && gsum(i - 1) <= Rat(0)) {
                const Rat step = rat_abs(p[q[i - 1]]);
                if (Rat(2) * gsum(i) <= step) {
                    out = append(base_nodes, ear_suffix(i));
                } else {
                    require_half(gsum(i - 1), step, "ii_a ear suffix");
                    out = append(base_nodes, ear_suffix(i - 1));
                }
                return true;
            }
        return false;
    };
    auto ear_rule_up = [&](const Rat& base_sum, std::vector<int>& out,
                           const std::vector<int>& base_nodes) {
        auto fsum = [&](int i) -> Rat { return base_sum + eq[i]; };
        for (int i = 1; i <= t; ++i)
            if (fsum(i) <= Rat(0)) {
                const Rat step = rat_abs(p[q[i - 1]]);
                if (Rat(2) * fsum(i - 1) <= step) {
                    out = append(base_nodes, ear_prefix(i - 1));
                } else {
                    require_half(fsum(i), step, "ii_a ear prefix");
                    out = append(base_nodes, ear_prefix(i));
                }
                return true;
            }
        return false;
    };

    if (pi != -1) {
        trace.push_back("ii_a:prefix");
        const Rat step = rat_abs(p[order[pi]]);
        bool took_past = Rat(2) * pre[pi] > step;
        if (took_past) require_half(pre[pi + 1], step, "ii_a prefix");
        const int cut = took_past ? pi + 1 : pi;
        set_u = prefix_of(cut);
        const Rat base_sum = suf(cut);
        if (!took_past && base_sum <= Rat(0)) {
            trace.push_back("ii_a:complement");
            require_half(base_sum, step, "ii_a complement");
            set_v = suffix_from(cut);
            return;
        }
        if (ear_rule_down(base_sum, set_v, suffix_from(cut))) {
            trace.push_back("ii_a:ear_scan");
            return;
        }
        // No crossing can only happen when the prefix cut past the sign
        // change, leaving a nonpositive V_1 sum that bounds the leftover.
        const Rat whole = base_sum + ear_total;
        if (!took_past || whole <= Rat(0)) throw InternalError("ear suffix scan found no crossing");
        require_half(whole, step, "ii_a full ear");
        trace.push_back("ii_a:ear_full");
        set_v = append(suffix_from(cut), q);
        return;
    }

    if (si != -1) {
        trace.push_back("ii_a:suffix");
        const Rat step = rat_abs(p[order[si - 1]]);
        bool took_past = Rat(2) * suf(si) > step;
        if (took_past) require_half(suf(si - 1), step, "ii_a suffix");
        const int cut = took_past ? si - 1 : si;
        set_v = suffix_from(cut);
        const Rat base_sum = pre[cut];
        if (!took_past && base_sum <= Rat(0)) {
            trace.push_back("ii_a:complement");
            require_half(base_sum, step, "ii_a complement");
            set_u = prefix_of(cut);
            return;
        }
        if (ear_rule_up(base_sum, set_u, prefix_of(cut))) {
            trace.push_back("ii_a:ear_scan");
            return;
        }
        const Rat whole = base_sum + ear_total;
        if (!took_past || whole <= Rat(0)) throw InternalError("ear prefix scan found no crossing");
        require_half(whole, step, "ii_a full ear");
        trace.push_back("ii_a:ear_full");
        set_u = append(prefix_of(cut), q);
        return;
    }

    trace.push_back("ii_b");
    const Rat su0 = pre[y - 1];
    const Rat sv0 = suf(y - 1);
    if (su0 <= Rat(0)) throw InternalError("ear-free prefix lost positivity");

    if (sv0 <= Rat(0)) {
        // Only reachable when the ear lands on numbering-adjacent spots;
        // split at the attachment node itself instead of inside the ear.
        if (y != x + 1 || y >= s || suf(y) <= Rat(0))
            throw InternalError("suffix side nonpositive away from the attachment gap");
        trace.push_back("ii_b:attach_gap");
        const Rat step = rat_abs(p[order[y - 1]]);
        if (Rat(2) * rat_abs(sv0) <= step) {
            set_v = suffix_from(y - 1);
            if (ear_rule_up(su0, set_u, prefix_of(y - 1))) return;
            const Rat whole = su0 + ear_total;
            if (whole <= Rat(0)) throw InternalError("whole-ear sum lost positivity");
            require_half(whole, step, "ii_b attach gap");
            set_u = append(prefix_of(y - 1), q);
            return;
        }
        require_half(suf(y), step, "ii_b attach gap suffix");
        set_v = suffix_from(y);
        if (!ear_rule_up(su0, set_u, prefix_of(y - 1)))
            throw InternalError("attach gap ear scan found no crossing");
        if (static_cast<int>(set_u.size()) >= y - 1 + t)
            throw InternalError("attach gap absorbed the whole ear");
        return;
    }

    auto asum = [&](int i) -> Rat { return su0 + eq[i]; };
    auto bsum = [&](int i) -> Rat { return sv0 + ear_total - eq[i]; };
    int ai = -1;
    for (int i = 0; i < t; ++i)
        if (asum(i) > Rat(0) && asum(i + 1) <= Rat(0)) {
            ai = i;
            break;
        }
    int bj = -1;
    for (int i = t - 1; i >= 0; --i)
        if (bsum(i) <= Rat(0)) {
            bj = i;
            break;
        }
    if (ai == -1 || bj == -1 || ai > bj) throw InternalError("ear scan indices out of order");

    if (ai == bj) {
        const Rat step = rat_abs(p[q[ai]]);
        const bool prefix_small = Rat(2) * asum(ai) <= step;
        const bool suffix_small = Rat(2) * bsum(ai + 1) <= step;
        if (prefix_small && suffix_small) {
            trace.push_back("ii_b:both_small");
            set_u = append(prefix_of(y - 1), ear_prefix(ai));
            set_v = append(suffix_from(y - 1), ear_suffix(ai + 1));
        } else if (suffix_small) {
            trace.push_back("ii_b:prefix_absorbs");
            require_half(asum(ai + 1), step, "ii_b prefix");
            set_u = append(prefix_of(y - 1), ear_prefix(ai + 1));
            set_v = append(suffix_from(y - 1), ear_suffix(ai + 1));
        } else if (prefix_small) {
            trace.push_back("ii_b:suffix_absorbs");
            require_half(bsum(ai), step, "ii_b suffix");
            set_u = append(prefix_of(y - 1), ear_prefix(ai));
            set_v = append(suffix_from(y - 1), ear_suffix(ai));
        } else {
            throw InternalError("ear crossing node cannot absorb either side");
        }
        return;
    }

    trace.push_back("ii_b:distinct");
    const Rat step_a = rat_abs(p[q[ai]]);
    if (Rat(2) * asum(ai) <= step_a) {
        set_u = append(prefix_of(y - 1), ear_prefix(ai));
    } else {
        require_half(asum(ai + 1), step_a, "ii_b prefix");
        set_u = append(prefix_of(y - 1), ear_prefix(ai + 1));
    }
    const Rat step_b = rat_abs(p[q[bj]]);
    if (Rat(2) * bsum(bj + 1) <= step_b) {
        set_v = append(suffix_from(y - 1), ear_suffix(bj + 1));
    } else {
        require_half(bsum(bj), step_b, "ii_b suffix");
        set_v = append(suffix_from(y - 1), ear_suffix(bj));
    }
}

}  // namespace

Bcpi2Result bcpi_2(const Graph& g, const WeightAssignment& p, int u, int v) {
    if (static_cast<int>(p.value.size()) != g.n)
        throw PreconditionError("weight assignment size differs from node count");
    if (u < 0 || u >= g.n || v < 0 || v >= g.n || u == v)
        throw PreconditionError("anchor nodes must be distinct in-range ids");
    if (p.total != Rat(0)) throw PreconditionError("weights must sum to zero");
    if (p[u] * p[v] <= Rat(0))
        throw PreconditionError("anchor weights must share a strict sign");
    if (!is_k_connected(g, 2)) throw PreconditionError("graph must be 2-connected");

    if (p[u] < Rat(0)) {
        Bcpi2Result res = bcpi_2(g, negated(p), u, v);
        res.partition = make_partition(g, p, res.partition.parts);
        res.trace.push_back("negated");
        return res;
    }

    Bcpi2Result res;
    res.numbering = st_numbering(g, u, v);
    const auto& order = res.numbering.order;
    std::vector<Rat> pre(g.n + 1, Rat(0));
    for (int i = 1; i <= g.n; ++i) pre[i] = pre[i - 1] + p[order[i - 1]];
    int istar = -1;
    for (int i = 1; i < g.n; ++i)
        if (pre[i] > Rat(0) && pre[i + 1] <= Rat(0)) {
            istar = i;
            break;
        }
    if (istar == -1) throw InternalError("prefix sums never cross zero");
    const Rat step = rat_abs(p[order[istar]]);
    int keep = istar;
    if (Rat(2) * pre[istar] <= step) {
        res.trace.push_back("take_prefix_at_crossing");
    } else {
        keep = istar + 1;
        res.trace.push_back("take_prefix_past_crossing");
    }
    require_half(pre[keep], step, "bcpi_2");

    std::vector<int> v1(order.begin(), order.begin() + keep);
    std::vector<int> v2(order.begin() + keep, order.end());
    res.partition = make_partition(g, p, {std::move(v1), std::move(v2)});
    res.prefix_len = keep;
    for (const auto& part : res.partition.parts)
        if (!connected_induced(g, part))
            throw InternalError("st-numbering split produced a disconnected side");
    return res;
}

Bcpi3Result bcpi_3(const Graph& g, const WeightAssignment& p, int u, int v, int w) {
    if (static_cast<int>(p.value.size()) != g.n)
        throw PreconditionError("weight assignment size differs from node count");
    for (int a : {u, v, w})
        if (a < 0 || a >= g.n) throw PreconditionError("anchor nodes must be in-range ids");
    if (u == v || u == w || v == w)
        throw PreconditionError("anchor nodes must be distinct");
    if (p.total != Rat(0)) throw PreconditionError("weights must sum to zero");
    const bool all_pos = p[u] > Rat(0) && p[v] > Rat(0) && p[w] > Rat(0);
    const bool all_neg = p[u] < Rat(0) && p[v] < Rat(0) && p[w] < Rat(0);
    if (!all_pos && !all_neg)
        throw PreconditionError("anchor weights must share a strict sign");
    if (!is_k_connected(g, 3)) throw PreconditionError("graph must be 3-connected");

    if (all_neg) {
        Bcpi3Result res = bcpi_3(g, negated(p), u, v, w);
        res.partition = make_partition(g, p, res.partition.parts);
        res.trace.push_back("negated");
        return res;
    }

    Bcpi3Result res;
    Graph host = g;
    if (!g.has_edge(u, v)) {
        auto edges = g.edges;
        edges.emplace_back(std::min(u, v), std::max(u, v));
        host = make_graph(g.n, std::move(edges));
        res.trace.push_back("virtual_uv_edge");
    }

    const EarDecomposition ed = nonseparating_ear_decomposition(host, u, v, w);
    const int r = static_cast<int>(ed.ears.size()) - 1;
    std::vector<Rat> pv(r + 1, Rat(0));
    pv[0] = weight_sum(p, ed.ears[0]);
    for (int k = 1; k <= r; ++k) {
        pv[k] = pv[k - 1];
        for (std::size_t i = 1; i + 1 < ed.ears[k].size(); ++i) pv[k] += p[ed.ears[k][i]];
    }

    std::vector<int> set_u, set_v;
    if (pv[0] <= Rat(0)) {
        res.trace.push_back("case_i");
        split_within_cycle(p, induced_st_order(g, ed.ears[0], u, v), res.trace, set_u, set_v);
    } else {
        res.trace.push_back("case_ii");
        split_with_ear(g, p, ed, pv, u, v, res.trace, set_u, set_v);
    }

    std::vector<char> taken(g.n, 0);
    for (int a : set_u) taken[a] = 1;
    for (int a : set_v) {
        if (taken[a]) throw InternalError("first two parts overlap");
        taken[a] = 2;
    }
    std::vector<int> rest;
    for (int a = 0; a < g.n; ++a)
        if (!taken[a]) rest.push_back(a);
    res.partition = make_partition(g, p, {std::move(set_u), std::move(set_v), std::move(rest)});

    const auto& parts = res.partition.parts;
    if (!std::binary_search(parts[0].begin(), parts[0].end(), u) ||
        !std::binary_search(parts[1].begin(), parts[1].end(), v) ||
        !std::binary_search(parts[2].begin(), parts[2].end(), w))
        throw InternalError("anchors landed in the wrong parts");
    for (const auto& part : parts)
        if (part.empty() || !connected_induced(g, part))
            throw InternalError("three-way split produced a disconnected part");
    const Rat pmax = max_abs_weight(p);
    if (Rat(2) * rat_abs(res.partition.sums[0]) > pmax ||
        Rat(2) * rat_abs(res.partition.sums[1]) > pmax ||
        rat_abs(res.partition.sums[2]) > pmax)
        throw InternalError("three-way split exceeds its weight bounds");
    return res;
}

std::vector<int> find_same_sign_triple(const WeightAssignment& p) {
    std::vector<int> pos, neg;
    for (std::size_t i = 0; i < p.value.size(); ++i) {
        if (p.value[i] > Rat(0)) pos.push_back(static_cast<int>(i));
        else if (p.value[i] < Rat(0)) neg.push_back(static_cast<int>(i));
    }
    if (pos.size() >= 3) return {pos[0], pos[1], pos[2]};
    if (neg.size() >= 3) return {neg[0], neg[1], neg[2]};
    return {};
}

} // namespace gridcleave
