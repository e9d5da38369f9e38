#ifndef GRIDCLEAVE_IO_HPP
#define GRIDCLEAVE_IO_HPP

#include <gridcleave/graph.hpp>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gridcleave {

// JSON document: {"nodes":[{"id":0,"p":"1"},...],"edges":[[0,1],...]}.
// Node ids must be exactly 0..n-1 (any order); "p" accepts an integer or
// a "num/den" string. Malformed input raises ParseError, semantic
// violations (duplicate edge, self-loop, id gaps) PreconditionError.
Instance read_instance_json(std::istream& in);
Instance read_instance_json_file(const std::string& path);

std::string write_instance_json(const Instance& inst);

// Plain edge list: one "u v" pair per line, '#' comments and blank lines
// ignored. n is one past the largest id. Weights come from a companion
// stream of "id value" lines (value integer or num/den); ids absent from
// the weights stream default to 0.
Graph read_edge_list(std::istream& in);
WeightAssignment read_weight_list(std::istream& in, int n);

// Partition result document. "trace" carries the decision labels the
// solver fired (joined by '/'), "seed" the embedding perturbation seed
// actually used (0 when none).
struct PartitionDocument {
    Partition partition;
    std::string trace;
    unsigned long long seed = 0;
};

std::string write_partition_json(const PartitionDocument& doc);

// Parses a partition document back (used by --check and the tests).
PartitionDocument read_partition_json(std::istream& in, const Graph& g,
                                      const WeightAssignment& p);

} // namespace gridcleave

#endif
