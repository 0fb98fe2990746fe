#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "densestream/common.hpp"

namespace densestream {

// Exhaustive reference implementations for cross-checking the fast paths.
// They deliberately share no code with the modules they verify and are capped
// to sizes where brute force is undeniably correct.

// Connected components by breadth-first search over an adjacency map.
// Same output contract as sketch::connected_components. Cap: 1000 nodes.
std::vector<std::vector<NodeId>> oracle_components(std::span<const Edge> edges);

// 2-core by whole-graph recomputation: repeatedly rebuild degrees and drop
// every node of degree <= 1 until nothing changes. Cap: 1000 nodes.
std::vector<NodeId> oracle_two_core(std::span<const NodeId> nodes, std::span<const Edge> edges);

// All perfect matchings of the stubs of a degree list, keyed by the multigraph
// they induce (canonical sorted edge list). Cap: 12 stubs, i.e. 10395 matchings.
struct MatchingCensus {
  std::int64_t total = 0;                         // (2k-1)!!
  std::map<std::string, std::int64_t> by_graph;   // canonical edge list -> matching count
};
MatchingCensus oracle_matchings(std::span<const std::int64_t> degrees);

// Canonical text key for an edge multiset: "u-v,u-v,..." sorted.
std::string canonical_edge_key(std::span<const Edge> edges);

// Upper tail of the chi-square distribution: P(X >= stat) with df degrees of
// freedom, via the regularized incomplete gamma function.
double chi_square_pvalue(double stat, int df);

// Pearson chi-square statistic for observed counts against expected
// probabilities (both indexed identically; probabilities must sum to ~1).
double chi_square_stat(std::span<const std::int64_t> observed, std::span<const double> expected_probs);

}  // namespace densestream
