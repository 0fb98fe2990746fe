#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "densestream/common.hpp"

// Pure queries over immutable edge-set snapshots; safe to call concurrently.

namespace densestream {

// Connected components of an edge set, restricted to the nodes the edges
// span. Components are sorted by size descending, ties by smallest minimum
// node id; node lists are sorted ascending.
struct ComponentSummary {
  std::vector<std::vector<NodeId>> components;

  const std::vector<NodeId>& largest() const;
  std::int64_t largest_size() const;
};

// Union-find over the spanned nodes; self-loops are ignored, duplicate edges
// are harmless.
ComponentSummary connected_components(std::span<const Edge> edges);

// Iteratively peel nodes of degree <= 1 (so isolated nodes vanish too) until
// a fixpoint; returns the sorted survivors. The edge set is treated as a
// simple graph: duplicates collapse, self-loops are ignored. Nodes mentioned
// by edges but absent from `nodes` are included.
std::vector<NodeId> two_core(std::span<const NodeId> nodes, std::span<const Edge> edges);

// Degree histogram of the sampled subgraph, plus the summary statistics the
// detector's diagnostics watch. Each edge occurrence contributes 1 to both
// endpoints; self-loops are ignored.
struct ReservoirDegreeStats {
  std::int64_t n_r = 0;                      // spanned node count
  std::map<std::int64_t, std::int64_t> x;    // degree -> node count
  std::int64_t i_star = 0;                   // max degree
  double x1_ratio = 0.0;                     // X_1 / N_R (0 when empty)
  double q_stat = 0.0;                       // sum_i i(i-2) X_i / N_R, exact numerator
};

ReservoirDegreeStats reservoir_degree_stats(std::span<const Edge> edges);

// {"n_r":..,"x":[[degree,count],..],"i_star":..,"x1_ratio":..,"q_stat":..}
std::string stats_to_json(const ReservoirDegreeStats& stats);

}  // namespace densestream
