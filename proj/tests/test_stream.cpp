#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "densestream/oracles.hpp"
#include "densestream/stream.hpp"

using namespace densestream;

namespace {

std::vector<TimestampedEdge> unit_stream(int m) {
  std::vector<TimestampedEdge> edges;
  for (int i = 0; i < m; ++i) edges.push_back({2 * i, 2 * i + 1, i});
  return edges;
}

}  // namespace

TEST_CASE("reservoir stores the whole stream while below capacity") {
  Reservoir r(3);
  CounterRng rng(1, rng_stream::kReservoir);
  const auto stream = unit_stream(3);
  for (const auto& e : stream) r.offer(e, rng);
  CHECK(r.seen() == 3);
  REQUIRE(r.samples().size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(r.samples()[static_cast<std::size_t>(i)] == stream[static_cast<std::size_t>(i)]);
}

TEST_CASE("reservoir never exceeds capacity and tracks seen") {
  Reservoir r(5);
  CounterRng rng(2, rng_stream::kReservoir);
  for (const auto& e : unit_stream(100)) {
    r.offer(e, rng);
    CHECK(static_cast<std::int64_t>(r.samples().size()) ==
          std::min<std::int64_t>(r.capacity(), r.seen()));
  }
  CHECK(r.seen() == 100);
}

TEST_CASE("self-loops are dropped before sampling") {
  Reservoir r(4);
  CounterRng rng(3, rng_stream::kReservoir);
  CHECK_FALSE(r.offer({7, 7, 0}, rng));
  CHECK(r.seen() == 0);
  CHECK(r.offer({1, 2, 1}, rng));
  CHECK(r.seen() == 1);
}

TEST_CASE("size-1 reservoir holds each edge uniformly") {
  // Exact law: at k=1, m=10, each edge survives with probability 1/10.
  const int m = 10, trials = 100000;
  std::vector<std::int64_t> wins(m, 0);
  for (int t = 0; t < trials; ++t) {
    Reservoir r(1);
    CounterRng rng(static_cast<std::uint64_t>(t), rng_stream::kReservoir);
    for (const auto& e : unit_stream(m)) r.offer(e, rng);
    wins[static_cast<std::size_t>(r.samples()[0].ts)] += 1;
  }
  const std::vector<double> expected(m, 1.0 / m);
  CHECK(chi_square_pvalue(chi_square_stat(wins, expected), m - 1) > 0.01);
}

TEST_CASE("size-2 reservoir over 6 edges hits all 15 subsets uniformly") {
  const int m = 6, trials = 100000;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> counts;
  for (int t = 0; t < trials; ++t) {
    Reservoir r(2);
    CounterRng rng(static_cast<std::uint64_t>(t) + 7'000'000, rng_stream::kReservoir);
    for (const auto& e : unit_stream(m)) r.offer(e, rng);
    auto a = r.samples()[0].ts, b = r.samples()[1].ts;
    counts[{std::min(a, b), std::max(a, b)}] += 1;
  }
  REQUIRE(counts.size() == 15);
  const double p = 1.0 / 15.0;
  const double sigma = std::sqrt(p * (1.0 - p) / trials);
  for (const auto& [subset, count] : counts) {
    const double freq = static_cast<double>(count) / trials;
    CHECK(std::fabs(freq - p) <= 3.0 * sigma);
  }
}

TEST_CASE("stream from a triangle in stored order") {
  MultiGraph tri;
  tri.n = 3;
  tri.edges = {{0, 1}, {0, 2}, {1, 2}};
  const auto stream = stream_from_graph(tri, StreamOrder::AsStored, 0);
  REQUIRE(stream.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(stream[static_cast<std::size_t>(i)].ts == i);
  CHECK(stream[0].u == 0);
  CHECK(stream[0].v == 1);
}

TEST_CASE("stream collapses duplicates and drops loops") {
  MultiGraph g;
  g.n = 4;
  g.edges = {{0, 1}, {0, 1}, {2, 2}, {1, 3}};
  const auto stream = stream_from_graph(g, StreamOrder::AsStored, 0);
  REQUIRE(stream.size() == 2);
  CHECK(stream[0].u == 0);
  CHECK(stream[1].v == 3);
}

TEST_CASE("shuffled streams replay per seed") {
  MultiGraph g;
  g.n = 10;
  for (NodeId u = 0; u < 9; ++u) g.edges.push_back({u, u + 1});
  const auto a = stream_from_graph(g, StreamOrder::Shuffled, 42);
  const auto b = stream_from_graph(g, StreamOrder::Shuffled, 42);
  CHECK(a == b);
  const auto c = stream_from_graph(g, StreamOrder::Shuffled, 43);
  CHECK(a != c);
}

TEST_CASE("shuffle visits all orderings of 4 edges uniformly") {
  MultiGraph g;
  g.n = 8;
  g.edges = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  std::map<std::string, std::int64_t> orders;
  const int trials = 10000;
  for (int seed = 50000; seed < 50000 + trials; ++seed) {
    const auto stream = stream_from_graph(g, StreamOrder::Shuffled, static_cast<std::uint64_t>(seed));
    std::string key;
    for (const auto& e : stream) key += static_cast<char>('0' + e.u);
    orders[key] += 1;
  }
  REQUIRE(orders.size() == 24);
  const double p = 1.0 / 24.0;
  const double sigma = std::sqrt(p * (1.0 - p) / trials);
  for (const auto& [key, count] : orders)
    CHECK(std::fabs(static_cast<double>(count) / trials - p) <= 3.0 * sigma);
}

TEST_CASE("explicit timestamps are honored") {
  MultiGraph g;
  g.n = 4;
  g.edges = {{0, 1}, {2, 3}};
  const std::vector<std::int64_t> ts{5, 9};
  const auto stream = stream_from_graph(g, StreamOrder::AsStored, 0, ts);
  CHECK(stream[0].ts == 5);
  CHECK(stream[1].ts == 9);
  const std::vector<std::int64_t> bad{1};
  CHECK_THROWS_AS(stream_from_graph(g, StreamOrder::AsStored, 0, bad), std::invalid_argument);
}

TEST_CASE("window intervals match the published geometry") {
  // tau=4, lambda=2 over timestamps 0..7: windows [0,4], [2,6], [4,8]
  std::vector<TimestampedEdge> stream;
  for (int i = 0; i < 8; ++i) stream.push_back({100 + i, 200 + i, i});
  const WindowedStream ws = window_reservoirs(stream, {4, 2}, 100, 1);
  REQUIRE(ws.windows.size() == 3);
  CHECK(ws.windows[0].t_close == 4);
  CHECK(ws.windows[1].t_close == 6);
  CHECK(ws.windows[2].t_close == 8);

  auto holds_ts = [](const WindowSample& w, std::int64_t ts) {
    for (const auto& e : w.reservoir.samples())
      if (e.ts == ts) return true;
    return false;
  };
  CHECK(holds_ts(ws.windows[0], 3));
  CHECK(holds_ts(ws.windows[1], 3));
  CHECK_FALSE(holds_ts(ws.windows[2], 3));

  // capacity above the window volume keeps every covered edge
  CHECK(ws.windows[0].reservoir.seen() == 5);  // ts 0..4
  CHECK(ws.windows[1].reservoir.seen() == 5);  // ts 2..6
  CHECK(ws.windows[2].reservoir.seen() == 4);  // ts 4..7
  CHECK(ws.max_open <= 4 / 2 + 1);
}

TEST_CASE("timestamp gaps produce empty middle windows") {
  std::vector<TimestampedEdge> stream{{0, 1, 0}, {2, 3, 20}};
  const WindowedStream ws = window_reservoirs(stream, {4, 2}, 10, 1);
  REQUIRE(ws.windows.size() == 9);  // close times 4,6,...,20
  CHECK(ws.windows.front().reservoir.seen() == 1);
  for (std::size_t i = 1; i + 1 < ws.windows.size(); ++i) CHECK(ws.windows[i].reservoir.seen() == 0);
  CHECK(ws.windows.back().reservoir.seen() == 1);
  CHECK(ws.max_open <= 3);
}

TEST_CASE("window reservoirs sample their window uniformly") {
  // one window of 100 edges sampled at k=10: per-edge inclusion near 0.1
  std::vector<TimestampedEdge> stream;
  for (int i = 0; i < 100; ++i) stream.push_back({2 * i, 2 * i + 1, i});
  const int trials = 4000;
  std::vector<std::int64_t> hits(100, 0);
  for (int t = 0; t < trials; ++t) {
    const WindowedStream ws = window_reservoirs(stream, {100, 50}, 10, static_cast<std::uint64_t>(t));
    REQUIRE_FALSE(ws.windows.empty());
    REQUIRE(ws.windows[0].reservoir.seen() == 100);
    for (const auto& e : ws.windows[0].reservoir.samples()) hits[static_cast<std::size_t>(e.ts)] += 1;
  }
  const double band = 3.5 * std::sqrt(0.1 * 0.9 / trials);
  for (const auto h : hits)
    CHECK(std::fabs(static_cast<double>(h) / trials - 0.1) <= band);
}

TEST_CASE("window indices come out contiguous for arbitrary sparse streams") {
  CounterRng rng(909);
  for (int round = 0; round < 200; ++round) {
    std::vector<TimestampedEdge> stream;
    std::int64_t ts = static_cast<std::int64_t>(rng.below(5));
    const int count = 1 + static_cast<int>(rng.below(40));
    for (int i = 0; i < count; ++i) {
      stream.push_back({2 * i, 2 * i + 1, ts});
      ts += static_cast<std::int64_t>(rng.below(30));  // gaps allowed
    }
    const WindowConfig cfg{6, rng.below(2) ? 3 : 2};
    const WindowedStream ws = window_reservoirs(stream, cfg, 4, round);
    REQUIRE_FALSE(ws.windows.empty());
    for (std::size_t i = 0; i < ws.windows.size(); ++i) {
      CHECK(ws.windows[i].index == static_cast<std::int64_t>(i) + 1);
      CHECK(ws.windows[i].t_close == cfg.close_time(ws.windows[i].index));
    }
    CHECK(ws.max_open <= cfg.tau / cfg.lambda + 1);
    // the emitted schedule always reaches the end of the stream
    CHECK(ws.windows.back().t_close >= stream.back().ts);
  }
}

TEST_CASE("parser survives arbitrary garbage lines") {
  CounterRng rng(111);
  const std::string alphabet = "0123456789 ab-#.\t";
  for (int round = 0; round < 500; ++round) {
    std::string text;
    const int lines = static_cast<int>(rng.below(6));
    for (int l = 0; l < lines; ++l) {
      const int len = static_cast<int>(rng.below(12));
      for (int i = 0; i < len; ++i) text += alphabet[rng.below(alphabet.size())];
      text += '\n';
    }
    std::stringstream in(text);
    try {
      parse_edge_stream(in);  // either parses or reports a line
    } catch (const ParseError& err) {
      CHECK(err.line() >= 1);
    }
  }
}

TEST_CASE("windows reject decreasing timestamps") {
  std::vector<TimestampedEdge> stream{{0, 1, 5}, {2, 3, 4}};
  CHECK_THROWS_AS(window_reservoirs(stream, {4, 2}, 10, 1), MalformedStream);
}

TEST_CASE("window config validation") {
  CHECK_THROWS_AS(window_reservoirs({}, {4, 3}, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(window_reservoirs({}, {4, 0}, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(window_reservoirs({}, {4, 4}, 10, 1), std::invalid_argument);
  CHECK(window_reservoirs({}, {4, 2}, 10, 1).windows.empty());
}

TEST_CASE("edge file parsing") {
  {
    std::stringstream in("0 1\n1 2\n");
    const ParsedStream ps = parse_edge_stream(in);
    REQUIRE(ps.edges.size() == 2);
    CHECK(ps.edges[0] == TimestampedEdge{0, 1, 0});
    CHECK(ps.edges[1] == TimestampedEdge{1, 2, 1});
  }
  {
    std::stringstream in("# comment\n0 1 5\n\n");
    const ParsedStream ps = parse_edge_stream(in);
    REQUIRE(ps.edges.size() == 1);
    CHECK(ps.edges[0].ts == 5);
  }
  {
    std::stringstream in("3 3\n0 1\n");
    const ParsedStream ps = parse_edge_stream(in);
    CHECK(ps.self_loops_skipped == 1);
    REQUIRE(ps.edges.size() == 1);
    CHECK(ps.edges[0].ts == 0);
  }
}

TEST_CASE("edge file parse errors carry line numbers") {
  auto expect_error_at = [](const std::string& text, std::int64_t line) {
    std::stringstream in(text);
    try {
      parse_edge_stream(in);
      FAIL("expected ParseError");
    } catch (const ParseError& err) {
      CHECK(err.line() == line);
    }
  };
  expect_error_at("0 x\n", 1);
  expect_error_at("0 1\n2\n", 2);
  expect_error_at("0 1 2 3\n", 1);
  expect_error_at("0 1 -4\n", 1);
  expect_error_at("-1 2\n", 1);
}

TEST_CASE("reservoir snapshots serialize with their header") {
  Reservoir r(2);
  CounterRng rng(5, rng_stream::kReservoir);
  for (const auto& e : unit_stream(6)) r.offer(e, rng);
  std::stringstream buffer;
  write_reservoir(buffer, r);
  std::string header;
  std::getline(buffer, header);
  CHECK(header == "# k=2 seen=6");
  const ParsedStream back = parse_edge_stream(buffer);
  CHECK(back.edges.size() == 2);
}
