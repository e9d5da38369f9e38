#include <gridcleave/embedding.hpp>
#include <gridcleave/errors.hpp>
#include <gridcleave/rng.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace gridcleave {

// ------------------------------------------------------- harmonic solve

namespace {

struct Incidence {
    int other;
    int edge;
};

std::vector<std::vector<Incidence>> incidence_lists(const Graph& g) {
    std::vector<std::vector<Incidence>> inc(g.n);
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        inc[u].push_back({v, e});
        inc[v].push_back({u, e});
    }
    return inc;
}

const std::array<Point, 3> kAnchorPoints{Point{Rat(0), Rat(0)}, Point{Rat(1), Rat(0)},
                                         Point{Rat(0), Rat(1)}};

} // namespace

Embedding convex_embedding(const Graph& g, const std::array<int, 3>& anchors,
                           const std::vector<Rat>& coeff) {
    if (static_cast<int>(coeff.size()) != g.m())
        throw PreconditionError("one coefficient per edge required");
    for (const Rat& c : coeff)
        if (c <= 0) throw PreconditionError("coefficients must be positive");
    std::set<int> distinct(anchors.begin(), anchors.end());
    if (distinct.size() != 3 || *distinct.begin() < 0 || *distinct.rbegin() >= g.n)
        throw PreconditionError("three distinct anchor nodes required");
    if (!is_connected(g)) throw PreconditionError("graph must be connected");

    std::vector<int> row_of(g.n, -1);
    std::vector<int> node_of;
    for (int v = 0; v < g.n; ++v)
        if (!distinct.count(v)) {
            row_of[v] = static_cast<int>(node_of.size());
            node_of.push_back(v);
        }
    const int r = static_cast<int>(node_of.size());

    Embedding emb;
    emb.anchors = anchors;
    emb.coeff = coeff;
    emb.point.assign(g.n, Point{Rat(0), Rat(0)});
    for (int a = 0; a < 3; ++a) emb.point[anchors[a]] = kAnchorPoints[a];
    if (r == 0) return emb;

    // c_v f(v) - sum c_uv f(u) = anchor terms; one matrix, two right sides.
    auto inc = incidence_lists(g);
    std::vector<std::vector<Rat>> a(r, std::vector<Rat>(r, Rat(0)));
    std::vector<Rat> bx(r, Rat(0)), by(r, Rat(0));
    for (int i = 0; i < r; ++i) {
        int v = node_of[i];
        for (const Incidence& in : inc[v]) {
            const Rat& c = coeff[in.edge];
            a[i][i] += c;
            if (row_of[in.other] != -1) {
                a[i][row_of[in.other]] -= c;
            } else {
                int slot = static_cast<int>(
                    std::find(anchors.begin(), anchors.end(), in.other) - anchors.begin());
                bx[i] += c * kAnchorPoints[slot].first;
                by[i] += c * kAnchorPoints[slot].second;
            }
        }
    }

    // Exact Gaussian elimination; any nonzero pivot is valid.
    for (int col = 0; col < r; ++col) {
        int piv = -1;
        for (int i = col; i < r && piv == -1; ++i)
            if (a[i][col] != 0) piv = i;
        if (piv == -1) throw InternalError("singular harmonic system");
        std::swap(a[col], a[piv]);
        std::swap(bx[col], bx[piv]);
        std::swap(by[col], by[piv]);
        for (int i = col + 1; i < r; ++i) {
            if (a[i][col] == 0) continue;
            Rat f = a[i][col] / a[col][col];
            for (int j = col; j < r; ++j) a[i][j] -= f * a[col][j];
            bx[i] -= f * bx[col];
            by[i] -= f * by[col];
        }
    }
    std::vector<Rat> x(r), y(r);
    for (int i = r - 1; i >= 0; --i) {
        Rat sx = bx[i], sy = by[i];
        for (int j = i + 1; j < r; ++j) {
            sx -= a[i][j] * x[j];
            sy -= a[i][j] * y[j];
        }
        x[i] = sx / a[i][i];
        y[i] = sy / a[i][i];
    }
    for (int i = 0; i < r; ++i) emb.point[node_of[i]] = {x[i], y[i]};

    if (!check_harmonic(g, emb)) throw InternalError("nonzero harmonic residual");
    return emb;
}

bool check_harmonic(const Graph& g, const Embedding& emb) {
    if (static_cast<int>(emb.point.size()) != g.n ||
        static_cast<int>(emb.coeff.size()) != g.m())
        return false;
    for (int a = 0; a < 3; ++a)
        if (emb.point[emb.anchors[a]] != kAnchorPoints[a]) return false;
    auto inc = incidence_lists(g);
    for (int v = 0; v < g.n; ++v) {
        if (v == emb.anchors[0] || v == emb.anchors[1] || v == emb.anchors[2]) continue;
        Rat cx(0), cy(0), cv(0);
        for (const Incidence& in : inc[v]) {
            const Rat& c = emb.coeff[in.edge];
            cv += c;
            cx += c * emb.point[in.other].first;
            cy += c * emb.point[in.other].second;
        }
        if (cv * emb.point[v].first != cx || cv * emb.point[v].second != cy) return false;
    }
    return true;
}

// -------------------------------------------------- random perturbation

std::vector<Rat> perturbation_factors(int count, int n, unsigned long long seed) {
    if (n < 1) throw PreconditionError("need n >= 1 for the noise scale");
    unsigned long long k4 = 1;
    for (int i = 0; i < 4; ++i) k4 *= static_cast<unsigned long long>(n);
    SplitMix64 rng{seed};
    std::vector<Rat> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        unsigned long long k = rng.below(k4);
        Rat noise(Int(static_cast<unsigned long>(k)), Int(static_cast<unsigned long>(k4)));
        noise.canonicalize();
        out.push_back(Rat(1) + noise);
    }
    return out;
}

bool sweep_general_position(const std::vector<Point>& pts) {
    const int n = static_cast<int>(pts.size());
    std::set<std::pair<Int, Int>> seen;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rat ddx = pts[i].first - pts[j].first;
            Rat ddy = pts[i].second - pts[j].second;
            if (ddx == 0 && ddy == 0) return false;
            Direction d = canonical_direction(ddx.get_num() * ddy.get_den(),
                                              ddy.get_num() * ddx.get_den());
            if (!seen.insert({d.dx, d.dy}).second) return false;
        }
    return true;
}

SeededEmbedding general_position_embedding(const Graph& g, const std::array<int, 3>& anchors,
                                           unsigned long long seed) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        unsigned long long s = seed + static_cast<unsigned long long>(attempt);
        Embedding emb = convex_embedding(g, anchors, perturbation_factors(g.m(), g.n, s));
        if (sweep_general_position(emb.point)) return {std::move(emb), s};
    }
    throw InternalError("no general-position perturbation found in 64 attempts");
}

// ----------------------------------------------------- tailored variant

bool check_tailored(const Embedding& emb, const std::vector<int>& v1,
                    const std::vector<int>& v2) {
    const Rat half(1, 2);
    for (int i : v1)
        if (emb.point[i].second < half) return false;
    for (int i : v2) {
        const auto& [x, y] = emb.point[i];
        if (x < y || x + 2 * y > 1) return false;
    }
    return true;
}

TailoredEmbedding tailored_embedding(const Graph& g, const std::vector<int>& v1,
                                     const std::vector<int>& v2, int u, int v, int w,
                                     unsigned long long seed, const std::vector<int>* mult,
                                     const std::function<bool(const Embedding&)>& extra_ok) {
    const int n = g.n, m = g.m();
    if (n < 4 || m < 1) throw PreconditionError("tailored embedding needs n >= 4");
    if (static_cast<int>(v1.size() + v2.size()) != n)
        throw PreconditionError("split must cover every node exactly once");
    std::vector<char> side(n, 0); // 1 in V_1', 2 in V_2'
    for (int i : v1) side[i] = 1;
    for (int i : v2) side[i] = 2;
    for (int i = 0; i < n; ++i)
        if (!side[i]) throw PreconditionError("split must cover every node");
    if (side[w] != 1 || side[u] != 2 || side[v] != 2)
        throw PreconditionError("anchors must sit in their Lemma-4 sides");
    if (!g.has_edge(u, w) || !g.has_edge(v, w))
        throw PreconditionError("w must neighbor both u and v");
    if (!connected_induced(g, v1) || !connected_induced(g, v2))
        throw PreconditionError("both sides of the split must be connected");
    if (mult && static_cast<int>(mult->size()) != m)
        throw PreconditionError("one multiplicity per edge required");

    // g_0 = 4 n^2 m, escalation g <- g^2 m, ceiling 4 n^(2n+2) m.
    Int n2 = Int(n) * Int(n);
    Rat g_mag = Rat(4) * Rat(n2) * Rat(m);
    Rat ceiling;
    {
        Int p;
        mpz_pow_ui(p.get_mpz_t(), Int(n).get_mpz_t(), 2 * static_cast<unsigned long>(n) + 2);
        ceiling = Rat(4) * Rat(p) * Rat(m);
    }

    unsigned long long s = seed;
    for (;;) {
        for (int tries = 0; tries < 8; ++tries, ++s) {
            // Per-strand perturbation: an edge of multiplicity t carries the
            // sum of t independently perturbed copies of its base value.
            std::vector<Rat> coeff(m);
            {
                int strands = 0;
                for (int e = 0; e < m; ++e) strands += mult ? std::max(1, (*mult)[e]) : 1;
                std::vector<Rat> noise = perturbation_factors(strands, n, s);
                int next = 0;
                for (int e = 0; e < m; ++e) {
                    auto [a, b] = g.edges[e];
                    Rat base = side[a] == side[b] ? g_mag : Rat(1);
                    Rat sum(0);
                    for (int t = mult ? std::max(1, (*mult)[e]) : 1; t > 0; --t)
                        sum += base * noise[next++];
                    coeff[e] = sum;
                }
            }
            Embedding emb = convex_embedding(g, {u, v, w}, coeff);
            if (!check_tailored(emb, v1, v2)) continue;
            if (!sweep_general_position(emb.point)) continue;
            if (extra_ok && !extra_ok(emb)) continue;
            TailoredEmbedding out;
            out.emb = std::move(emb);
            out.g = g_mag;
            out.v1 = v1;
            out.v2 = v2;
            out.seed = s;
            return out;
        }
        if (g_mag >= ceiling) throw InternalError("tailored embedding failed at the ceiling");
        g_mag = g_mag * g_mag * Rat(m);
        if (g_mag > ceiling) g_mag = ceiling;
    }
}

// -------------------------------------------------------------- sweeping

Direction canonical_direction(Int dx, Int dy) {
    if (dx == 0 && dy == 0) throw InternalError("zero direction");
    Int g;
    mpz_gcd(g.get_mpz_t(), dx.get_mpz_t(), dy.get_mpz_t());
    dx /= g;
    dy /= g;
    if (dy < 0 || (dy == 0 && dx < 0)) {
        dx = -dx;
        dy = -dy;
    }
    return {dx, dy};
}

namespace {

// 0 for the half-turn [0°, 180°), 1 for the rest.
int half_of(const Direction& d) {
    return (d.dy > 0 || (d.dy == 0 && d.dx > 0)) ? 0 : 1;
}

Int cross(const Direction& a, const Direction& b) { return a.dx * b.dy - a.dy * b.dx; }

Direction reduced(Int dx, Int dy) {
    Int g;
    mpz_gcd(g.get_mpz_t(), dx.get_mpz_t(), dy.get_mpz_t());
    if (g == 0) throw InternalError("zero direction");
    return {dx / g, dy / g};
}

} // namespace

bool direction_less(const Direction& a, const Direction& b) {
    int ha = half_of(a), hb = half_of(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
}

std::vector<CriticalDirection> critical_directions(const std::vector<Point>& pts) {
    const int n = static_cast<int>(pts.size());
    if (n < 2) throw PreconditionError("need at least two points");
    std::map<std::pair<Int, Int>, std::vector<std::pair<int, int>>> merged;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rat ddx = pts[i].first - pts[j].first;
            Rat ddy = pts[i].second - pts[j].second;
            if (ddx == 0 && ddy == 0) throw PreconditionError("coincident points");
            // Integer vector parallel to the difference, then its
            // perpendicular: projections tie exactly along it.
            Int ax = ddx.get_num() * ddy.get_den();
            Int ay = ddy.get_num() * ddx.get_den();
            Direction d = canonical_direction(-ay, ax);
            merged[{d.dx, d.dy}].push_back({i, j});
        }
    std::vector<CriticalDirection> out;
    out.reserve(merged.size());
    for (auto& [key, pairs] : merged) out.push_back({{key.first, key.second}, std::move(pairs)});
    std::sort(out.begin(), out.end(), [](const CriticalDirection& a, const CriticalDirection& b) {
        return direction_less(a.dir, b.dir);
    });
    return out;
}

std::vector<Direction> gap_directions(const std::vector<CriticalDirection>& crit) {
    if (crit.empty()) throw PreconditionError("no critical directions");
    std::vector<Direction> full;
    full.reserve(2 * crit.size());
    for (const auto& c : crit) {
        full.push_back(c.dir);
        full.push_back({-c.dir.dx, -c.dir.dy});
    }
    std::sort(full.begin(), full.end(), direction_less);
    const int m = static_cast<int>(full.size());
    std::vector<Direction> gaps;
    gaps.reserve(m);
    for (int i = 0; i < m; ++i) {
        const Direction& a = full[i];
        const Direction& b = full[(i + 1) % m];
        Int sx = a.dx + b.dx, sy = a.dy + b.dy;
        // Antipodal neighbors only occur with a single critical pair; any
        // strictly-between direction works, the perpendicular is one.
        gaps.push_back(sx == 0 && sy == 0 ? reduced(-a.dy, a.dx) : reduced(sx, sy));
    }
    return gaps;
}

std::vector<int> projection_order(const std::vector<Point>& pts, const Direction& dir) {
    const int n = static_cast<int>(pts.size());
    std::vector<Rat> key(n);
    for (int v = 0; v < n; ++v)
        key[v] = pts[v].first * dir.dx + pts[v].second * dir.dy;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return key[a] != key[b] ? key[a] < key[b] : a < b;
    });
    for (int i = 0; i + 1 < n; ++i)
        if (key[order[i]] == key[order[i + 1]])
            throw PreconditionError("projection tie: direction is critical");
    return order;
}

Partition sweep_split(const Graph& g, const WeightAssignment& p,
                      const std::vector<Point>& pts, const Direction& dir, int k) {
    if (k < 1 || k >= g.n) throw PreconditionError("split index out of range");
    std::vector<int> order = projection_order(pts, dir);
    std::vector<int> first(order.begin(), order.begin() + k);
    std::vector<int> rest(order.begin() + k, order.end());
    std::sort(first.begin(), first.end());
    std::sort(rest.begin(), rest.end());
    return make_partition(g, p, {std::move(first), std::move(rest)});
}

std::vector<TrajectoryEntry> sweep_trajectory(const WeightAssignment& p,
                                              const std::vector<Point>& pts, int k) {
    const int n = static_cast<int>(pts.size());
    if (k < 1 || k >= n) throw PreconditionError("split index out of range");
    if (static_cast<int>(p.value.size()) != n)
        throw PreconditionError("weights and points disagree on n");
    auto crit = critical_directions(pts);
    auto gaps = gap_directions(crit);
    const int half = static_cast<int>(crit.size());
    std::vector<TrajectoryEntry> out;
    out.reserve(half + 1);
    for (int i = 0; i <= half; ++i) {
        const Direction& dir = gaps[i];
        std::vector<int> order = projection_order(pts, dir);
        Rat value(0);
        for (int j = 0; j < k; ++j) value += p[order[j]];
        out.push_back({dir, value});
    }
    return out;
}

// ------------------------------------------------------------- rendering

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

std::string render_svg(const Graph& g, const Embedding& emb, const Partition* partition,
                       bool draw_guides) {
    const double kSide = 640.0, kMargin = 48.0;
    Rat minx = emb.point[0].first, maxx = minx, miny = emb.point[0].second, maxy = miny;
    for (const auto& [x, y] : emb.point) {
        minx = std::min(minx, x);
        maxx = std::max(maxx, x);
        miny = std::min(miny, y);
        maxy = std::max(maxy, y);
    }
    if (draw_guides) {
        // Guide lines live in the anchor frame; widen the box to show it.
        minx = std::min(minx, Rat(0));
        maxx = std::max(maxx, Rat(1));
        miny = std::min(miny, Rat(0));
        maxy = std::max(maxy, Rat(1));
    }
    double x0 = minx.get_d(), y0 = miny.get_d();
    double w = maxx.get_d() - x0, h = maxy.get_d() - y0;
    if (w <= 0) w = 1;
    if (h <= 0) h = 1;
    double scale = (kSide - 2 * kMargin) / std::max(w, h);
    auto sx = [&](const Rat& x) { return kMargin + (x.get_d() - x0) * scale; };
    auto sy = [&](const Rat& y) { return kSide - kMargin - (y.get_d() - y0) * scale; };

    static const char* kFill[3] = {"#3c78b4", "#d1495b", "#5a9e5a"};
    std::vector<int> part_of(g.n, -1);
    if (partition)
        for (std::size_t pi = 0; pi < partition->parts.size(); ++pi)
            for (int v : partition->parts[pi]) part_of[v] = static_cast<int>(pi);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" "
           "height=\"640\" viewBox=\"0 0 640 640\">\n";
    svg << "<rect width=\"640\" height=\"640\" fill=\"#ffffff\"/>\n";

    if (draw_guides) {
        auto line = [&](const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by,
                        const char* color) {
            svg << "<line x1=\"" << fmt(sx(ax)) << "\" y1=\"" << fmt(sy(ay)) << "\" x2=\""
                << fmt(sx(bx)) << "\" y2=\"" << fmt(sy(by)) << "\" stroke=\"" << color
                << "\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
        };
        line(minx, Rat(1, 2), maxx, Rat(1, 2), "#888888");               // L1: y = 1/2
        line(Rat(1) - 2 * miny, miny, Rat(1) - 2 * maxy, maxy, "#888888"); // L2: x + 2y = 1
        Rat lo = std::max(minx, miny), hi = std::min(maxx, maxy);
        if (lo < hi) line(lo, lo, hi, hi, "#888888"); // L3: x = y
        svg << "<polygon points=\"" << fmt(sx(Rat(0))) << ',' << fmt(sy(Rat(0))) << ' '
            << fmt(sx(Rat(1))) << ',' << fmt(sy(Rat(0))) << ' ' << fmt(sx(Rat(0))) << ','
            << fmt(sy(Rat(1)))
            << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    }

    for (auto [u, v] : g.edges)
        svg << "<line x1=\"" << fmt(sx(emb.point[u].first)) << "\" y1=\""
            << fmt(sy(emb.point[u].second)) << "\" x2=\"" << fmt(sx(emb.point[v].first))
            << "\" y2=\"" << fmt(sy(emb.point[v].second))
            << "\" stroke=\"#999999\" stroke-width=\"1.5\"/>\n";

    for (int v = 0; v < g.n; ++v) {
        const char* fill = part_of[v] >= 0 ? kFill[part_of[v] % 3] : "#666666";
        svg << "<circle cx=\"" << fmt(sx(emb.point[v].first)) << "\" cy=\""
            << fmt(sy(emb.point[v].second)) << "\" r=\"6\" fill=\"" << fill
            << "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fmt(sx(emb.point[v].first) + 8.0) << "\" y=\""
            << fmt(sy(emb.point[v].second) - 8.0) << "\" font-size=\"11\" fill=\"#333333\">" << v
            << "</text>\n";
    }

    if (partition) {
        for (std::size_t pi = 0; pi < partition->parts.size(); ++pi) {
            double ty = 20.0 + 16.0 * static_cast<double>(pi);
            svg << "<rect x=\"12\" y=\"" << fmt(ty - 10.0)
                << "\" width=\"10\" height=\"10\" fill=\"" << kFill[pi % 3] << "\"/>\n";
            svg << "<text x=\"28\" y=\"" << fmt(ty) << "\" font-size=\"12\" fill=\"#333333\">V"
                << pi + 1 << " size " << partition->sizes[pi] << " sum "
                << rat_to_string(partition->sums[pi]) << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace gridcleave
