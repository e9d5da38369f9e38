#ifndef GRIDCLEAVE_GRAPH_HPP
#define GRIDCLEAVE_GRAPH_HPP

#include <gridcleave/rational.hpp>

#include <utility>
#include <vector>

namespace gridcleave {

// Simple undirected graph over node ids 0..n-1. Adjacency lists are kept
// sorted; edges are stored once as (u,v) with u < v, lexicographically
// sorted. Multigraphs never use this type (see ContractedGraph).
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;
    std::vector<std::pair<int, int>> edges;

    int m() const { return static_cast<int>(edges.size()); }
    bool has_edge(int u, int v) const;
};

// Validates and builds: rejects out-of-range ids, self-loops and duplicate
// edges with PreconditionError.
Graph make_graph(int n, std::vector<std::pair<int, int>> edges);

// Node -> exact rational supply/demand value, with the total cached.
struct WeightAssignment {
    std::vector<Rat> value;
    Rat total;

    const Rat& operator[](int v) const { return value[v]; }
};

WeightAssignment make_weights(std::vector<Rat> values);

// A graph with its weights; the unit every solver and generator trades in.
struct Instance {
    Graph graph;
    WeightAssignment weights;
};

// True iff every value is exactly +1 or -1.
bool is_pm1(const WeightAssignment& p);

// max_j |p(j)|; zero for an empty assignment.
Rat max_abs_weight(const WeightAssignment& p);

// 2- or 3-way split of V with cached part sums and sizes. Parts are sorted
// node lists; their disjoint union must be V.
struct Partition {
    std::vector<std::vector<int>> parts;
    std::vector<Rat> sums;
    std::vector<int> sizes;
};

// Computes the caches and checks the disjoint-cover invariant
// (PreconditionError on violation).
Partition make_partition(const Graph& g, const WeightAssignment& p,
                         std::vector<std::vector<int>> parts);

struct SeparationPair {
    int u = -1;
    int v = -1;
    std::vector<std::vector<int>> components;
};

// --- connectivity queries ---------------------------------------------

// G[S] connected; empty and singleton sets count as connected.
bool connected_induced(const Graph& g, const std::vector<int>& s);

bool is_connected(const Graph& g);

// Connected components of G[V \ removed], each sorted.
std::vector<std::vector<int>> components_after_removal(const Graph& g,
                                                       const std::vector<int>& removed);

// k in 1..3 only; exhaustive cut-set search, no flow machinery.
bool is_k_connected(const Graph& g, int k);

// All separation pairs of a 2-connected graph, pairs sorted lexicographically.
std::vector<SeparationPair> find_separation_pairs(const Graph& g);

// --- instance diagnostics ---------------------------------------------

enum class WeightRegime { pm1, general };

struct InstanceDiagnostics {
    int connectivity = 0; // largest k in 0..3 with is_k_connected true
    Rat total;
    bool pm1 = false;
    int n_mod_4 = 0;
    bool regime_ok = false; // requested regime's invariants hold
};

// Reports connectivity level, p(V), +-1 regime flag and n mod 4. The pm1
// regime additionally requires: all values +-1, and n even when p(V)=0.
InstanceDiagnostics validate_instance(const Graph& g, const WeightAssignment& p,
                                      WeightRegime regime);

// Sum of p over a node set.
Rat weight_sum(const WeightAssignment& p, const std::vector<int>& nodes);

} // namespace gridcleave

#endif
