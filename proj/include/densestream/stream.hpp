#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "densestream/common.hpp"
#include "densestream/graph_gen.hpp"
#include "densestream/rng.hpp"

namespace densestream {

struct TimestampedEdge {
  NodeId u = 0;
  NodeId v = 0;
  std::int64_t ts = 0;

  bool operator==(const TimestampedEdge&) const = default;
};

// Fixed-capacity uniform sample of an edge stream. After m admitted offers
// every edge is held with probability k/m. Self-loops are never admitted and
// do not advance the seen count. Single-writer: snapshot samples()/edge_set()
// before querying from elsewhere.
class Reservoir {
 public:
  explicit Reservoir(std::int64_t capacity);

  // Returns whether the edge was admitted (self-loops are not).
  bool offer(const TimestampedEdge& e, CounterRng& rng);

  std::int64_t capacity() const { return capacity_; }
  std::int64_t seen() const { return seen_; }
  std::span<const TimestampedEdge> samples() const { return samples_; }

  // Normalized sample pairs, for the component/core/stat queries.
  std::vector<Edge> edge_set() const;

 private:
  std::int64_t capacity_;
  std::int64_t seen_ = 0;
  std::vector<TimestampedEdge> samples_;
};

// Sliding-window geometry: window i (1-based) covers [lambda*(i-1),
// tau + lambda*(i-1)], closed at both ends. Requires 0 < lambda < tau and
// lambda dividing tau.
struct WindowConfig {
  std::int64_t tau = 0;
  std::int64_t lambda = 0;

  void validate() const;
  std::int64_t close_time(std::int64_t index) const { return tau + lambda * (index - 1); }
  std::int64_t open_time(std::int64_t index) const { return lambda * (index - 1); }
  std::int64_t spacing() const { return tau / lambda; }  // index gap for disjoint windows
};

enum class StreamOrder { AsStored, Shuffled };

// One pass over the graph's distinct edges (duplicates collapsed, self-loops
// dropped), in first-seen or uniformly shuffled order. Timestamps are
// 0,1,2,... unless `explicit_ts` supplies one per emitted edge.
std::vector<TimestampedEdge> stream_from_graph(const MultiGraph& g, StreamOrder order,
                                               std::uint64_t seed,
                                               std::span<const std::int64_t> explicit_ts = {});

struct WindowSample {
  std::int64_t index = 0;    // 1-based
  std::int64_t t_close = 0;  // tau + lambda*(index-1)
  Reservoir reservoir;
};

struct WindowedStream {
  WindowConfig cfg;
  std::vector<WindowSample> windows;
  std::int64_t max_open = 0;  // peak simultaneously open windows (<= tau/lambda + 1)
};

// One independent capacity-k reservoir per window, each fed exactly the edges
// whose timestamps fall in its interval. Window i's sampler draws from rng
// stream (seed, kWindowBase + i), so results do not depend on interleaving.
// Windows are emitted in index order, 1..ceil((T-tau)/lambda)+1 where T is
// the last timestamp; empty windows included. Throws MalformedStream on a
// decreasing timestamp.
WindowedStream window_reservoirs(std::span<const TimestampedEdge> stream, WindowConfig cfg,
                                 std::int64_t k, std::uint64_t seed);

struct ParsedStream {
  std::vector<TimestampedEdge> edges;
  std::int64_t self_loops_skipped = 0;
};

// Text edges, one per line: "u v" or "u v ts", whitespace separated, with
// '#' comment lines and blank lines skipped. A missing ts is the edge's
// arrival index. Self-loops are dropped and counted. Throws ParseError with
// the offending line number.
ParsedStream parse_edge_stream(std::istream& in);
ParsedStream parse_edge_file(const std::string& path);

void write_edge_stream(std::ostream& out, std::span<const TimestampedEdge> edges);

// Snapshot: header "# k=<k> seen=<seen>", then the samples as an edge stream.
void write_reservoir(std::ostream& out, const Reservoir& r);

}  // namespace densestream
