#include "densestream/stream.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace densestream {

Reservoir::Reservoir(std::int64_t capacity) : capacity_(capacity) {
  if (capacity < 0) throw std::invalid_argument("Reservoir: negative capacity");
  samples_.reserve(static_cast<std::size_t>(std::min<std::int64_t>(capacity, 1 << 20)));
}

bool Reservoir::offer(const TimestampedEdge& e, CounterRng& rng) {
  if (e.u == e.v) return false;
  ++seen_;
  if (seen_ <= capacity_) {
    samples_.push_back(e);
    return true;
  }
  // Keep with probability k/seen, replacing a uniform slot: one draw does both.
  const auto j = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(seen_)));
  if (j < capacity_) samples_[static_cast<std::size_t>(j)] = e;
  return true;
}

std::vector<Edge> Reservoir::edge_set() const {
  std::vector<Edge> edges;
  edges.reserve(samples_.size());
  for (const auto& e : samples_) edges.push_back(normalized(e.u, e.v));
  return edges;
}

void WindowConfig::validate() const {
  if (lambda <= 0 || tau <= lambda) throw std::invalid_argument("window config: need 0 < lambda < tau");
  if (tau % lambda != 0) throw std::invalid_argument("window config: lambda must divide tau");
}

std::vector<TimestampedEdge> stream_from_graph(const MultiGraph& g, StreamOrder order,
                                               std::uint64_t seed,
                                               std::span<const std::int64_t> explicit_ts) {
  std::vector<Edge> distinct;
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(g.edges.size() * 2);
  for (const auto& [u, v] : g.edges) {
    if (u == v) continue;
    const Edge e = normalized(u, v);
    if (seen.insert(edge_key(e)).second) distinct.push_back(e);
  }
  if (order == StreamOrder::Shuffled) {
    CounterRng rng(seed, rng_stream::kShuffle);
    fisher_yates(distinct, rng);
  }
  if (!explicit_ts.empty() && explicit_ts.size() != distinct.size())
    throw std::invalid_argument("stream_from_graph: explicit timestamp count mismatch");

  std::vector<TimestampedEdge> stream;
  stream.reserve(distinct.size());
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    const std::int64_t ts = explicit_ts.empty() ? static_cast<std::int64_t>(i) : explicit_ts[i];
    stream.push_back({distinct[i].first, distinct[i].second, ts});
  }
  return stream;
}

WindowedStream window_reservoirs(std::span<const TimestampedEdge> stream, WindowConfig cfg,
                                 std::int64_t k, std::uint64_t seed) {
  cfg.validate();
  WindowedStream out;
  out.cfg = cfg;
  if (stream.empty()) return out;

  struct OpenWindow {
    std::int64_t index;
    Reservoir reservoir;
    CounterRng rng;
  };
  std::deque<OpenWindow> open;
  std::int64_t next_index = 1;
  std::int64_t prev_ts = -1;

  auto emit = [&](OpenWindow&& w) {
    out.windows.push_back({w.index, cfg.close_time(w.index), std::move(w.reservoir)});
  };

  for (const auto& e : stream) {
    if (e.ts < prev_ts) throw MalformedStream("window_reservoirs: decreasing timestamp");
    if (e.ts < 0) throw MalformedStream("window_reservoirs: negative timestamp");
    prev_ts = e.ts;

    // windows that can get no more edges close now, in index order
    while (!open.empty() && cfg.close_time(open.front().index) < e.ts) {
      emit(std::move(open.front()));
      open.pop_front();
    }
    // last window whose interval contains e.ts; skipped windows (timestamp
    // gaps) are emitted empty without ever sitting in the deque
    const std::int64_t last_covering = e.ts / cfg.lambda + 1;
    while (next_index <= last_covering && cfg.close_time(next_index) < e.ts) {
      out.windows.push_back({next_index, cfg.close_time(next_index), Reservoir(k)});
      ++next_index;
    }
    while (next_index <= last_covering) {
      open.push_back({next_index, Reservoir(k),
                      CounterRng(seed, rng_stream::kWindowBase + static_cast<std::uint64_t>(next_index))});
      ++next_index;
      out.max_open = std::max(out.max_open, static_cast<std::int64_t>(open.size()));
    }
    for (auto& w : open) w.reservoir.offer(e, w.rng);
  }

  // The stream ends inside the newest windows; only those scheduled to close
  // by the first close time >= the last timestamp are complete.
  std::int64_t final_index = 1;
  if (prev_ts > cfg.tau)
    final_index = (prev_ts - cfg.tau + cfg.lambda - 1) / cfg.lambda + 1;
  while (!open.empty() && open.front().index <= final_index) {
    emit(std::move(open.front()));
    open.pop_front();
  }
  return out;
}

ParsedStream parse_edge_stream(std::istream& in) {
  ParsedStream result;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;

    std::istringstream ls(line);
    NodeId u = 0, v = 0;
    if (!(ls >> u >> v)) throw ParseError("edge stream: expected 'u v' or 'u v ts'", line_no);
    std::int64_t ts = static_cast<std::int64_t>(result.edges.size());
    std::string token;
    if (ls >> token) {
      std::size_t used = 0;
      try {
        ts = std::stoll(token, &used);
      } catch (const std::exception&) {
        throw ParseError("edge stream: bad timestamp", line_no);
      }
      if (used != token.size()) throw ParseError("edge stream: bad timestamp", line_no);
      if (ls >> token) throw ParseError("edge stream: trailing tokens", line_no);
    }
    if (u < 0 || v < 0) throw ParseError("edge stream: negative node id", line_no);
    if (ts < 0) throw ParseError("edge stream: negative timestamp", line_no);
    if (u == v) {
      ++result.self_loops_skipped;
      continue;
    }
    result.edges.push_back({u, v, ts});
  }
  return result;
}

ParsedStream parse_edge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge file: " + path, 0);
  return parse_edge_stream(in);
}

void write_edge_stream(std::ostream& out, std::span<const TimestampedEdge> edges) {
  for (const auto& e : edges) out << e.u << ' ' << e.v << ' ' << e.ts << '\n';
}

void write_reservoir(std::ostream& out, const Reservoir& r) {
  out << "# k=" << r.capacity() << " seen=" << r.seen() << '\n';
  write_edge_stream(out, r.samples());
}

}  // namespace densestream
