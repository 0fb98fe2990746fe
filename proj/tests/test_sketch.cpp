#include "doctest.h"

#include <algorithm>
#include <vector>

#include "densestream/oracles.hpp"
#include "densestream/rng.hpp"
#include "densestream/sketch.hpp"

using namespace densestream;

namespace {

std::vector<Edge> random_edges(CounterRng& rng, int max_node, int count) {
  std::vector<Edge> edges;
  for (int i = 0; i < count; ++i) {
    const auto u = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(max_node)));
    const auto v = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(max_node)));
    edges.push_back(normalized(u, v));
  }
  return edges;
}

}  // namespace

TEST_CASE("components of hand graphs") {
  CHECK(connected_components({}).components.empty());
  CHECK(connected_components({}).largest_size() == 0);

  const std::vector<Edge> edges{{0, 1}, {1, 2}, {3, 4}};
  const ComponentSummary summary = connected_components(edges);
  REQUIRE(summary.components.size() == 2);
  CHECK(summary.largest() == std::vector<NodeId>{0, 1, 2});
  CHECK(summary.components[1] == std::vector<NodeId>{3, 4});
}

TEST_CASE("component ties fall to the smallest minimum id") {
  const std::vector<Edge> edges{{5, 6}, {1, 2}};
  const ComponentSummary summary = connected_components(edges);
  CHECK(summary.largest() == std::vector<NodeId>{1, 2});
}

TEST_CASE("components ignore edge order") {
  std::vector<Edge> edges{{0, 1}, {2, 3}, {1, 2}, {7, 8}, {8, 9}};
  const ComponentSummary a = connected_components(edges);
  std::reverse(edges.begin(), edges.end());
  const ComponentSummary b = connected_components(edges);
  CHECK(a.components == b.components);
}

TEST_CASE("components match the bfs oracle on random edge sets") {
  CounterRng rng(314);
  for (int round = 0; round < 1000; ++round) {
    const std::vector<Edge> edges = random_edges(rng, 30, 50);
    CHECK(connected_components(edges).components == oracle_components(edges));
  }
}

TEST_CASE("two-core of hand graphs") {
  const std::vector<NodeId> nodes{0, 1, 2, 3};
  const std::vector<Edge> tri_pendant{{0, 1}, {1, 2}, {0, 2}, {2, 3}};
  CHECK(two_core(nodes, tri_pendant) == std::vector<NodeId>{0, 1, 2});

  const std::vector<Edge> tree{{0, 1}, {1, 2}, {1, 3}};
  CHECK(two_core(nodes, tree).empty());

  // two triangles joined by a path with three interior nodes: the interiors
  // have degree 2 and are never peeled, so everything survives
  const std::vector<Edge> barbell{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4},
                                  {4, 5}, {5, 6}, {6, 7}, {7, 8}, {6, 8}};
  const std::vector<NodeId> all{0, 1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(two_core(all, barbell) == all);
}

TEST_CASE("two-core removes isolated nodes") {
  const std::vector<NodeId> nodes{9};
  CHECK(two_core(nodes, {}).empty());
}

TEST_CASE("two-core is idempotent and matches the recompute oracle") {
  CounterRng rng(2718);
  for (int round = 0; round < 1000; ++round) {
    const std::vector<Edge> edges = random_edges(rng, 25, 40);
    std::vector<NodeId> nodes;
    for (const auto& [u, v] : edges) {
      nodes.push_back(u);
      nodes.push_back(v);
    }
    const std::vector<NodeId> core = two_core(nodes, edges);
    CHECK(core == oracle_two_core(nodes, edges));

    std::vector<Edge> internal;
    for (const auto& e : edges)
      if (std::binary_search(core.begin(), core.end(), e.first) &&
          std::binary_search(core.begin(), core.end(), e.second))
        internal.push_back(e);
    CHECK(two_core(core, internal) == core);
  }
}

TEST_CASE("degree stats of a single edge") {
  const std::vector<Edge> one{{0, 1}};
  const ReservoirDegreeStats stats = reservoir_degree_stats(one);
  CHECK(stats.n_r == 2);
  CHECK(stats.x.at(1) == 2);
  CHECK(stats.i_star == 1);
  CHECK(stats.x1_ratio == doctest::Approx(1.0));
  CHECK(stats.q_stat == doctest::Approx(-1.0));
}

TEST_CASE("degree stats of a 4-leaf star") {
  const std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  const ReservoirDegreeStats stats = reservoir_degree_stats(star);
  CHECK(stats.n_r == 5);
  CHECK(stats.x.at(1) == 4);
  CHECK(stats.x.at(4) == 1);
  CHECK(stats.i_star == 4);
  CHECK(stats.q_stat == doctest::Approx(0.8));  // (4*(-1) + 8) / 5
}

TEST_CASE("degree stats of nothing") {
  const ReservoirDegreeStats stats = reservoir_degree_stats({});
  CHECK(stats.n_r == 0);
  CHECK(stats.i_star == 0);
  CHECK(stats.x1_ratio == 0.0);
  CHECK(stats.q_stat == 0.0);
}

TEST_CASE("degree stats serialize to the fixed json shape") {
  const std::vector<Edge> one{{0, 1}};
  CHECK(stats_to_json(reservoir_degree_stats(one)) ==
        "{\"n_r\":2,\"x\":[[1,2]],\"i_star\":1,\"x1_ratio\":1,\"q_stat\":-1}");
}
