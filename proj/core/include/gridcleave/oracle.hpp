#ifndef GRIDCLEAVE_ORACLE_HPP
#define GRIDCLEAVE_ORACLE_HPP

#include <gridcleave/graph.hpp>

#include <cstdint>
#include <functional>
#include <vector>

namespace gridcleave {

inline constexpr int kDefaultEnumerationCap = 16;

// Visits every 2-partition of V with both sides nonempty and connected,
// exactly once, as (side containing node 0, complement), both sorted.
// Recursion over (set, frontier, forbidden) node sets: output-polynomial,
// so sparse graphs stay tractable well past the subset-count wall.
// CapExceededError when g.n > cap (node ids must fit a 64-bit mask, so
// cap may never exceed 64).
void for_each_connected_partition(
    const Graph& g, int cap,
    const std::function<void(const std::vector<int>&, const std::vector<int>&)>& visit);

// Materialized variant for small graphs; weight-independent, so parts only.
std::vector<std::pair<std::vector<int>, std::vector<int>>>
enumerate_connected_partitions(const Graph& g, int cap = kDefaultEnumerationCap);

// True iff both sides connected and nonempty, imbalance <= c_p (centered:
// |p(V_i) - p(V)/2|), and size ratio <= c_s. Malformed partitions
// (not a disjoint cover of V) raise PreconditionError.
bool verify_partition(const Graph& g, const WeightAssignment& p, const Partition& part,
                      const Rat& c_p, const Rat& c_s, bool centered);

// Pareto-minimal (imbalance, ratio) points over all connected
// 2-partitions, sorted by imbalance ascending; witnesses kept.
struct FrontierPoint {
    Rat imbalance;
    Rat ratio;
    Partition witness;
};

std::vector<FrontierPoint> best_frontier(const Graph& g, const WeightAssignment& p,
                                         bool centered, int cap = kDefaultEnumerationCap);

// True iff some frontier point has imbalance <= c_p and ratio <= c_s.
bool frontier_admits(const std::vector<FrontierPoint>& frontier, const Rat& c_p,
                     const Rat& c_s);

// Two terminals joined by 2s+1 internally disjoint paths, each carrying
// 4t+2 interior nodes, +-1 weights summing to zero. The weight pattern is
// the first schema (in a fixed search order) whose smallest instances
// provably pin both trade-off floors: no zero-imbalance split with ratio
// below n/2-1 at t=0, and no equal-size split with imbalance below n/6
// at s=1.
Instance gen_fig1(int s, int t);

// Deterministic-from-seed instance at the requested connectivity level
// (2 or 3) with balanced +-1 weights; n >= 4 (prism base needs n >= 6 for
// triangle-free variants, handled internally), n even.
Instance gen_random(int n, int connectivity, std::uint64_t seed);

} // namespace gridcleave

#endif
