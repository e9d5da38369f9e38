#ifndef GRIDCLEAVE_STRUCTURE_HPP
#define GRIDCLEAVE_STRUCTURE_HPP

#include <gridcleave/graph.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace gridcleave {

// ---------------------------------------------------------------- types

// order[0]=s, order[n-1]=t, every interior node has a neighbor earlier
// and a neighbor later in the order.
struct StNumbering {
    std::vector<int> order;
    int s = -1;
    int t = -1;
};

bool check_st_numbering(const Graph& g, const StNumbering& num);

// ears[0] is a cycle (node sequence, closing edge implicit); every later
// ear is an open path whose endpoints lie in earlier ears and whose
// interior nodes are new. Only node-adding ears are recorded.
struct EarDecomposition {
    std::vector<std::vector<int>> ears;
    std::pair<int, int> through{-1, -1};
    int avoided = -1;
};

// Validates the nonseparating invariants: ears[0] contains the through
// edge and not the avoided node; for every prefix before the ear that
// introduces the avoided node, the prefix complement is connected and
// each interior node of the newest ear has a neighbor outside the
// prefix; the avoided node is the single interior node of the last ear.
bool check_ear_decomposition(const Graph& g, const EarDecomposition& d);

// Interior order of a separation component between u and v: writing
// v_0=u, v_{t+1}=v, every v_i has a neighbor before and after it.
struct PseudoPath {
    std::vector<int> interior;
    int u = -1;
    int v = -1;
};

bool check_pseudo_path(const Graph& g, const PseudoPath& p);

// Quotient multigraph over the kept original nodes. Parallel edges stay
// separate; each carries the pseudo-path of original nodes it replaced
// (empty for an original edge). Node ids are original ids.
struct ContractedGraph {
    struct Edge {
        int u = -1;
        int v = -1;
        std::vector<int> interior; // path order from u to v
        int weight() const { return static_cast<int>(interior.size()); }
    };
    std::vector<int> nodes; // sorted
    std::vector<Edge> edges;

    int total_weight() const;
    // Underlying simple graph on quotient ids 0..|nodes|-1 plus the maps
    // between original and quotient ids.
    Graph skeleton(std::vector<int>& orig_of, std::vector<int>& quot_of) const;
};

// Either a separation pair of the original graph all of whose components
// are small, or a 3-connected quotient with small edge weights.
struct Decomposition {
    enum class Case { separation_pair, contracted } which;
    SeparationPair pair;      // valid for Case::separation_pair
    ContractedGraph quotient; // valid for Case::contracted
};

// ------------------------------------------------------------ operations

// Open-ear-decomposition construction rooted at an {s,t} path; the edge
// {s,t} is treated as present virtually. PreconditionError if the graph
// plus the virtual edge is not 2-connected.
StNumbering st_numbering(const Graph& g, int s, int t);

// Chordless cycle through edge {t,r} avoiding node `avoid` whose removal
// leaves the graph connected. G must be 3-connected. Improvement scheme
// first; falls back to exhaustive induced-cycle enumeration (the output
// is always validated).
std::vector<int> nonseparating_induced_cycle(const Graph& g, int t, int r, int avoid);

// All chordless cycles, each rotated to start at its smallest node in
// the direction of its smaller neighbor; sorted. Test oracle, exponential.
std::vector<std::vector<int>> enumerate_induced_cycles(const Graph& g);

// Greedy nonseparating ear decomposition through {t,r} avoiding `avoid`:
// at each step the lexicographically smallest ear that keeps the prefix
// complement connected is added; the avoided node arrives last.
EarDecomposition nonseparating_ear_decomposition(const Graph& g, int t, int r, int avoid);

// st-numbering interior of G[component ∪ {u,v}] with a virtual {u,v}
// edge. `component` must be a connected component of G - {u,v}.
PseudoPath pseudo_path(const Graph& g, const std::vector<int>& component, int u, int v);

// Contraction dichotomy: repeatedly contract all non-largest separation
// components (sizes in original nodes, parallel-edge interiors counted
// as own components) until either some pair has all components smaller
// than (q-1)|V|/q, or the quotient is 3-connected with every edge weight
// below |V|/q. Deterministic: pairs scanned lexicographically.
Decomposition decompose_q(const Graph& g, int q);

// Recognition by series/parallel reductions down to a single edge.
bool is_series_parallel(const Graph& g);

// Separation pair all of whose components have fewer than 2|V|/3 nodes,
// found by walking the series-parallel derivation tree toward the child
// with the most nodes. PreconditionError if not 2-connected series-parallel.
SeparationPair series_parallel_separation_pair(const Graph& g);

} // namespace gridcleave

#endif
