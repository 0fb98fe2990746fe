#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "densestream/common.hpp"
#include "densestream/degree_model.hpp"

namespace densestream {

// Node/edge container. Edges are stored normalized (u <= v); self-loops and
// duplicate pairs are allowed unless `simple` is set, in which case neither
// occurs.
struct MultiGraph {
  std::int64_t n = 0;
  std::vector<Edge> edges;
  bool simple = false;

  // Per-node degrees; a self-loop contributes 2 to its endpoint.
  std::vector<std::int64_t> degrees() const;
};

// The planted set and the parameters it was planted with.
struct GroundTruth {
  std::vector<NodeId> s;  // sorted ascending
  double gamma = 0.0;
  double delta = 0.0;
};

// Multigraph with the given per-node degrees via a uniform random perfect
// matching of stubs. With `simple`, whole matchings are rejection-sampled
// until one has no self-loop or duplicate edge (throws GenerationError after
// `retry_cap` failures).
MultiGraph configuration_model(std::span<const std::int64_t> degrees, bool simple,
                               std::uint64_t seed, int retry_cap = 1000);
MultiGraph configuration_model(const DegreeSequence& seq, bool simple, std::uint64_t seed,
                               int retry_cap = 1000);

// Configuration model with a planted dense subgraph: S = the floor(delta *
// sqrt(n)) highest-degree nodes (ties by lowest id), each with delta*sqrt(n)-1
// marked stubs; every inter-node marked pair becomes an edge independently
// with probability gamma (pairs visited in lexicographic order, a success
// consuming one marked stub at each end); every stub not consumed is matched
// uniformly. When `simple`, rejection applies to the residual matching only -
// the planted edges stay fixed across retries.
//
// Throws std::invalid_argument when fewer than |S| nodes have degree >=
// delta*sqrt(n) (on the plain power-law sequence this is guaranteed for
// delta <= sqrt(c)/2; see zipf_sequence_with_floor for denser plants).
std::pair<MultiGraph, GroundTruth> concentrated_model(const DegreeSequence& seq, double gamma,
                                                      double delta, std::uint64_t seed,
                                                      bool simple = false, int retry_cap = 1000);

// Fraction of distinct inter-node pairs of S present as edges: |E[S]| over
// |S|(|S|-1)/2. Duplicate edges count once; self-loops never count.
// Requires |S| >= 2.
double gamma_density(const MultiGraph& g, std::span<const NodeId> s);

// G(n, p): every unordered pair independently with probability p. Generated
// with geometric skips, so the cost is proportional to the output.
MultiGraph erdos_renyi(std::int64_t n, double p, std::uint64_t seed);

// Uniform perfect matching over a stub multiset (each entry is the node the
// stub belongs to). Consumes rng; stubs is left in matched order.
std::vector<Edge> match_stubs_uniform(std::vector<NodeId>& stubs, class CounterRng& rng);

// Text edge list: header "# n=<n>", then one "u v" per line.
void write_edge_list(std::ostream& out, const MultiGraph& g);
MultiGraph read_edge_list(std::istream& in);

// Ground-truth node set: one id per line.
void write_node_set(std::ostream& out, std::span<const NodeId> nodes);
std::vector<NodeId> read_node_set(std::istream& in);

}  // namespace densestream
