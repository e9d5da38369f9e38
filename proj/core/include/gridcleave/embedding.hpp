#ifndef GRIDCLEAVE_EMBEDDING_HPP
#define GRIDCLEAVE_EMBEDDING_HPP

#include <gridcleave/graph.hpp>

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace gridcleave {

using Point = std::pair<Rat, Rat>;

// Convex embedding with three anchors pinned at (0,0), (1,0), (0,1) (in
// anchor order) and every other node at the exact coefficient-weighted
// barycenter of its neighbors.
struct Embedding {
    std::vector<Point> point;  // node -> position
    std::array<int, 3> anchors{-1, -1, -1};
    std::vector<Rat> coeff;    // per edge, indexed like Graph::edges
};

// Solves the harmonic system in exact rational arithmetic (Gaussian
// elimination, residual identically zero). Coefficients must be > 0
// (PreconditionError); a singular system cannot occur for a connected
// graph and is reported as InternalError.
Embedding convex_embedding(const Graph& g, const std::array<int, 3>& anchors,
                           const std::vector<Rat>& coeff);

// Exact check of the barycenter identity for all non-anchors.
bool check_harmonic(const Graph& g, const Embedding& emb);

// Multiplicative coefficient noise 1 + k/K, K = n^4, k seeded and
// deterministic; one factor per draw.
std::vector<Rat> perturbation_factors(int count, int n, unsigned long long seed);

// Distinct points, no three collinear, and no two node-disjoint pairs
// perpendicular to a common direction: the conditions under which every
// critical direction swaps exactly one adjacent pair.
bool sweep_general_position(const std::vector<Point>& pts);

// Unit-coefficient convex embedding reperturbed (seed, seed+1, ...) until
// sweep_general_position holds; records the accepted seed.
struct SeededEmbedding {
    Embedding emb;
    unsigned long long seed = 0;
};
SeededEmbedding general_position_embedding(const Graph& g, const std::array<int, 3>& anchors,
                                           unsigned long long seed);

// Embedding whose coefficients are g on edges inside V_1' or inside V_2'
// and 1 on crossing edges, with g grown adaptively until the three
// half-plane conditions hold:
//   every V_1' node has y >= 1/2              (above L1: y = 1/2)
//   every V_2' node has x >= y                (below L3: x = y)
//   every V_2' node has x + 2y <= 1           (below L2: x + 2y = 1)
// Anchors are (u, v, w) at ((0,0), (1,0), (0,1)); w must lie in V_1' and
// u, v in V_2'.
struct TailoredEmbedding {
    Embedding emb;
    Rat g;           // accepted elasticity magnitude
    std::vector<int> v1, v2;
    unsigned long long seed = 0;
};

// mult[e] > 1 treats edge e as that many parallel strands: each strand is
// perturbed separately and the factors summed (used for contracted
// quotients). extra_ok, when set, must also accept the embedding or the
// seed is retried. g starts at 4n^2 m, retries as g^2 m, and the run is
// abandoned (InternalError) past the ceiling 4 n^(2n+2) m.
TailoredEmbedding tailored_embedding(const Graph& g, const std::vector<int>& v1,
                                     const std::vector<int>& v2, int u, int v, int w,
                                     unsigned long long seed,
                                     const std::vector<int>* mult = nullptr,
                                     const std::function<bool(const Embedding&)>& extra_ok = {});

// Exact L1/L2/L3 predicate check against a candidate split.
bool check_tailored(const Embedding& emb, const std::vector<int>& v1,
                    const std::vector<int>& v2);

// ------------------------------------------------------------- sweeping

// Primitive integer direction; canonical half-turn form has dy > 0, or
// dy == 0 and dx > 0.
struct Direction {
    Int dx, dy;
};

bool direction_less(const Direction& a, const Direction& b); // full-turn angular order
Direction canonical_direction(Int dx, Int dy);               // reduce + half-turn fold

// One merged critical direction with every generating point pair.
struct CriticalDirection {
    Direction dir;
    std::vector<std::pair<int, int>> pairs; // i < j
};

// For every pair of distinct points, the projection direction that ties
// them (perpendicular to their difference), folded to the half-turn,
// merged and angularly sorted. PreconditionError on coincident points.
std::vector<CriticalDirection> critical_directions(const std::vector<Point>& pts);

// Tie-free evaluation directions, one per gap of the full turn (2K gaps
// for K half-turn criticals): the vector sum of the gap's two boundary
// directions. Entry i lies between full-turn critical i and i+1.
std::vector<Direction> gap_directions(const std::vector<CriticalDirection>& crit);

// Nodes sorted by exact projection onto dir; PreconditionError on a tie.
std::vector<int> projection_order(const std::vector<Point>& pts, const Direction& dir);

// First k nodes of the projection order vs the rest.
Partition sweep_split(const Graph& g, const WeightAssignment& p,
                      const std::vector<Point>& pts, const Direction& dir, int k);

// p(first k) evaluated in each of the first K+1 gaps (a half turn plus
// one antipodal gap, so the last entry mirrors the first: value[K] =
// -value[0] + p(V)... for p(V)=0 exactly the negation).
struct TrajectoryEntry {
    Direction dir;
    Rat value;
};
std::vector<TrajectoryEntry> sweep_trajectory(const WeightAssignment& p,
                                              const std::vector<Point>& pts, int k);

// ------------------------------------------------------------ rendering

// Deterministic SVG 1.1: nodes as circles (colored by part when a
// partition is given), edges as segments; with draw_guides the anchor
// triangle and the L1/L2/L3 lines are added.
std::string render_svg(const Graph& g, const Embedding& emb,
                       const Partition* partition, bool draw_guides);

} // namespace gridcleave

#endif
