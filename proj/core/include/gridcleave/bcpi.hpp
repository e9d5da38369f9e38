#ifndef GRIDCLEAVE_BCPI_HPP
#define GRIDCLEAVE_BCPI_HPP

#include <gridcleave/graph.hpp>
#include <gridcleave/structure.hpp>

#include <string>
#include <vector>

namespace gridcleave {

// Two connected parts V_1 (containing u, part 0) and V_2 (containing v)
// with |p(V_1)| = |p(V_2)| <= max_j |p(j)| / 2; exactly zero in the +-1
// regime. Returns the st-numbering whose prefix realizes part 0.
struct Bcpi2Result {
    Partition partition;
    StNumbering numbering;
    int prefix_len = 0;
    std::vector<std::string> trace;
};

// Preconditions (PreconditionError): G 2-connected, p(V)=0, p(u)p(v) > 0.
Bcpi2Result bcpi_2(const Graph& g, const WeightAssignment& p, int u, int v);

// Three connected parts, u in V_1, v in V_2, w in V_3, with
// |p(V_1)|, |p(V_2)| <= max|p|/2 and |p(V_3)| <= max|p|; all zero in the
// +-1 regime. trace records the case labels that fired.
struct Bcpi3Result {
    Partition partition;
    std::vector<std::string> trace;
};

// Preconditions: G 3-connected, p(V)=0, p(u), p(v), p(w) all the same
// strict sign.
Bcpi3Result bcpi_3(const Graph& g, const WeightAssignment& p, int u, int v, int w);

// Smallest same-sign triple (u < v < w with p all strictly positive, else
// all strictly negative), or empty. Convenience for callers that do not
// care which triple anchors the three parts.
std::vector<int> find_same_sign_triple(const WeightAssignment& p);

} // namespace gridcleave

#endif
