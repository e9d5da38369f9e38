#ifndef GRIDCLEAVE_DBCP_HPP
#define GRIDCLEAVE_DBCP_HPP

#include <gridcleave/graph.hpp>
#include <gridcleave/structure.hpp>

#include <array>
#include <string>
#include <vector>

namespace gridcleave {

// Doubly balanced result: cp_achieved = max_i |p(V_i)| (centered variant
// when the solver targets it), cs_achieved = max size ratio. trace lists
// the decision labels on the path that produced the partition; seed is
// the embedding perturbation seed actually used (0 when no embedding).
struct DbcpResult {
    Partition partition;
    Rat cp_achieved;
    Rat cs_achieved;
    std::vector<std::string> trace;
    unsigned long long seed = 0;
};

// Recomputes cp (plain or centered) and cs from a partition.
Rat partition_imbalance(const Graph& g, const WeightAssignment& p, const Partition& part,
                        bool centered);
Rat partition_ratio(const Partition& part);

// --------------------------------------------------------------- Lemma 4

// Triple u,v,w and split (V_1', V_2') with: both sides connected, {u,w}
// and {v,w} edges, w in V_1', u and v in V_2', |V_2'| <= n/2. Derived
// from a nonseparating induced cycle.
struct CutTriple {
    int u = -1, v = -1, w = -1;
    std::vector<int> v1, v2; // sorted
};

CutTriple cut_triple(const Graph& g);
bool check_cut_triple(const Graph& g, const CutTriple& ct);

// Weighted variant on a contracted quotient: the size of a side counts
// its nodes plus the interior weights of all edges both of whose
// endpoints lie in it; bound |V_2*| + sum of enclosed weights <= total_n/2.
CutTriple cut_triple_weighted(const ContractedGraph& q, int total_n);
bool check_cut_triple_weighted(const ContractedGraph& q, int total_n, const CutTriple& ct);

// Nodes plus enclosed interior weights of a quotient node subset.
int expanded_size(const ContractedGraph& q, const std::vector<int>& nodes);

// ------------------------------------------------------------ main solvers

// 3-connected, +-1 weights, p(V)=0. Sums (0,0); sizes equal when
// n = 0 mod 4, else |V_1| = |V_2| + 2.
DbcpResult dbcp_3(const Graph& g, const WeightAssignment& p, unsigned long long seed = 1);

// 3-connected, arbitrary weights. Centered bound
// |p(V_i) - p(V)/2| <= max_j |p(j)|, sizes equal up to odd-n parity.
DbcpResult dbcp_3_general(const Graph& g, const WeightAssignment& p,
                          unsigned long long seed = 1);

// Separation-pair walk: +-1 weights, p(V)=0, every component of the pair
// smaller than (q-1)n/q, q > 1. Gives |p(V_i)| <= 1 and size ratio
// <= q-1 (ratio guaranteed for q >= 3; see README on q=2).
DbcpResult dbcp_sep_case(const Graph& g, const WeightAssignment& p, int q,
                         const SeparationPair& pair);

// 2-connected, +-1 weights, p(V)=0. |p(V_i)| <= 1, ratio <= 3.
DbcpResult dbcp_2(const Graph& g, const WeightAssignment& p, unsigned long long seed = 1);

// 2-connected, arbitrary weights. Centered bound max|p(j)|, both sizes
// >= n/4.
DbcpResult dbcp_2_general(const Graph& g, const WeightAssignment& p,
                          unsigned long long seed = 1);

// 2-connected series-parallel, +-1, p(V)=0: |p(V_i)| <= 1, ratio <= 2
// via the derivation-tree separation pair and the q=3 walk.
DbcpResult dbcp_series_parallel(const Graph& g, const WeightAssignment& p);

// ------------------------------------------------------------- two colors

// Splits V into two connected sides balancing both color counts: for a
// 3-connected graph with |R|, |B| even each side gets exactly half of
// each color; otherwise the counts are off by at most one per color
// (odd sizes) or satisfy |r_i - (n_r/n_b) b_i| <= 1 with ratio <= 3
// (2-connected).
struct TwoColorResult {
    DbcpResult result;
    std::array<int, 2> red_count{0, 0};
    std::array<int, 2> blue_count{0, 0};
    Rat deviation; // max_i |r_i - (n_r/n_b) b_i|, n_r <= n_b orientation
};

TwoColorResult two_color_partition(const Graph& g, const std::vector<int>& red,
                                   const std::vector<int>& blue,
                                   unsigned long long seed = 1);

} // namespace gridcleave

#endif
