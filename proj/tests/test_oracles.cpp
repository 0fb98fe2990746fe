#include "doctest.h"

#include <cmath>
#include <vector>

#include "densestream/oracles.hpp"

using namespace densestream;

TEST_CASE("six stubs enumerate to 15 matchings") {
  const std::vector<std::int64_t> degrees{2, 2, 2};
  const MatchingCensus census = oracle_matchings(degrees);
  CHECK(census.total == 15);  // 5!! = 15

  // 8 triangles, 1 all-loops, and 2 per loop+double-edge configuration
  CHECK(census.by_graph.at("0-1,0-2,1-2") == 8);
  CHECK(census.by_graph.at("0-0,1-1,2-2") == 1);
  CHECK(census.by_graph.at("0-0,1-2,1-2") == 2);
  CHECK(census.by_graph.at("0-1,0-1,2-2") == 2);
  CHECK(census.by_graph.at("0-2,0-2,1-1") == 2);
  CHECK(census.by_graph.size() == 5);
}

TEST_CASE("four degree-1 stubs give the 3 perfect matchings") {
  const std::vector<std::int64_t> degrees{1, 1, 1, 1};
  const MatchingCensus census = oracle_matchings(degrees);
  CHECK(census.total == 3);
  CHECK(census.by_graph.size() == 3);
  for (const auto& [key, count] : census.by_graph) CHECK(count == 1);
}

TEST_CASE("matching enumeration refuses oversized inputs") {
  const std::vector<std::int64_t> degrees(14, 1);
  CHECK_THROWS_AS(oracle_matchings(degrees), std::invalid_argument);
}

TEST_CASE("bfs components on a hand graph") {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {3, 4}, {5, 5}};
  const auto comps = oracle_components(edges);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<NodeId>{0, 1, 2});
  CHECK(comps[1] == std::vector<NodeId>{3, 4});
}

TEST_CASE("naive two-core peels paths and keeps cycles") {
  const std::vector<NodeId> nodes{0, 1, 2, 3};
  const std::vector<Edge> path{{0, 1}, {1, 2}, {2, 3}};
  CHECK(oracle_two_core(nodes, path).empty());

  const std::vector<Edge> tri_pendant{{0, 1}, {1, 2}, {0, 2}, {2, 3}};
  CHECK(oracle_two_core(nodes, tri_pendant) == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("chi-square pvalue matches the df=2 closed form") {
  // For df = 2 the upper tail is exactly exp(-x/2).
  for (const double stat : {0.5, 2.0, 4.60517, 9.21034, 13.8155}) {
    CHECK(chi_square_pvalue(stat, 2) == doctest::Approx(std::exp(-0.5 * stat)).epsilon(1e-9));
  }
  CHECK(chi_square_pvalue(0.0, 5) == 1.0);
  // Table values: P(X >= 29.141 | df=14) = 0.01, P(X >= 16.919 | df=9) = 0.05.
  CHECK(chi_square_pvalue(29.141, 14) == doctest::Approx(0.01).epsilon(1e-3));
  CHECK(chi_square_pvalue(16.919, 9) == doctest::Approx(0.05).epsilon(1e-3));
}

TEST_CASE("chi-square statistic hand check") {
  const std::vector<std::int64_t> observed{60, 40};
  const std::vector<double> probs{0.5, 0.5};
  CHECK(chi_square_stat(observed, probs) == doctest::Approx(4.0));
}
