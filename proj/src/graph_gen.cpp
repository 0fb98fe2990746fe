#include "densestream/graph_gen.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "densestream/rng.hpp"

namespace densestream {

std::vector<std::int64_t> MultiGraph::degrees() const {
  std::vector<std::int64_t> deg(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : edges) {
    deg[static_cast<std::size_t>(u)] += 1;
    deg[static_cast<std::size_t>(v)] += 1;  // a self-loop hits the same slot twice
  }
  return deg;
}

std::vector<Edge> match_stubs_uniform(std::vector<NodeId>& stubs, CounterRng& rng) {
  if (stubs.size() % 2 != 0) throw std::invalid_argument("match_stubs_uniform: odd stub count");
  std::vector<Edge> edges;
  edges.reserve(stubs.size() / 2);
  std::size_t remaining = stubs.size();
  while (remaining >= 2) {
    // pair the last live stub with a uniform random one among the rest
    const std::size_t j = static_cast<std::size_t>(rng.below(remaining - 1));
    std::swap(stubs[j], stubs[remaining - 2]);
    edges.push_back(normalized(stubs[remaining - 1], stubs[remaining - 2]));
    remaining -= 2;
  }
  return edges;
}

namespace {

bool is_simple(std::span<const Edge> edges) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    if (e.first == e.second) return false;
    if (!seen.insert(edge_key(e)).second) return false;
  }
  return true;
}

std::vector<NodeId> stubs_of(std::span<const std::int64_t> degrees) {
  std::vector<NodeId> stubs;
  std::int64_t total = 0;
  for (const auto d : degrees) {
    if (d < 0) throw std::invalid_argument("configuration_model: negative degree");
    total += d;
  }
  if (total % 2 != 0) throw std::invalid_argument("configuration_model: odd degree sum");
  stubs.reserve(static_cast<std::size_t>(total));
  for (std::size_t u = 0; u < degrees.size(); ++u)
    for (std::int64_t i = 0; i < degrees[u]; ++i) stubs.push_back(static_cast<NodeId>(u));
  return stubs;
}

}  // namespace

MultiGraph configuration_model(std::span<const std::int64_t> degrees, bool simple,
                               std::uint64_t seed, int retry_cap) {
  MultiGraph g;
  g.n = static_cast<std::int64_t>(degrees.size());
  g.simple = simple;
  CounterRng rng(seed, rng_stream::kGraphGen);
  const std::vector<NodeId> base = stubs_of(degrees);
  for (int attempt = 0;; ++attempt) {
    std::vector<NodeId> stubs = base;
    g.edges = match_stubs_uniform(stubs, rng);
    if (!simple || is_simple(g.edges)) return g;
    if (attempt + 1 >= retry_cap)
      throw GenerationError("configuration_model: no simple matching within retry cap");
  }
}

MultiGraph configuration_model(const DegreeSequence& seq, bool simple, std::uint64_t seed,
                               int retry_cap) {
  seq.validate();
  const std::vector<std::int64_t> degrees = assign_degrees(seq);
  return configuration_model(degrees, simple, seed, retry_cap);
}

std::pair<MultiGraph, GroundTruth> concentrated_model(const DegreeSequence& seq, double gamma,
                                                      double delta, std::uint64_t seed,
                                                      bool simple, int retry_cap) {
  seq.validate();
  if (gamma <= 0.0 || gamma > 1.0)
    throw std::invalid_argument("concentrated_model: gamma must be in (0, 1]");
  if (delta <= 0.0) throw std::invalid_argument("concentrated_model: delta must be positive");

  const double dsn = delta * std::sqrt(static_cast<double>(seq.n));
  const auto s_size = static_cast<std::int64_t>(dsn);
  if (s_size < 2) throw std::invalid_argument("concentrated_model: planted set smaller than 2");

  const std::vector<std::int64_t> degrees = assign_degrees(seq);  // descending
  if (s_size > seq.n || static_cast<double>(degrees[static_cast<std::size_t>(s_size - 1)]) < dsn)
    throw std::invalid_argument(
        "concentrated_model: fewer than delta*sqrt(n) nodes of degree >= delta*sqrt(n)");

  MultiGraph g;
  g.n = seq.n;
  g.simple = simple;
  CounterRng rng(seed, rng_stream::kGraphGen);

  // Each node of S owns s_size-1 marked stubs. Marked pairs are visited in
  // lexicographic order; a success consumes one marked stub at each end.
  const std::int64_t marks = s_size - 1;
  std::vector<std::int64_t> consumed(static_cast<std::size_t>(s_size), 0);
  std::vector<Edge> planted;
  for (NodeId u = 0; u < s_size; ++u) {
    for (NodeId v = u + 1; v < s_size; ++v) {
      if (rng.bernoulli(gamma)) {
        planted.emplace_back(u, v);
        consumed[static_cast<std::size_t>(u)] += 1;
        consumed[static_cast<std::size_t>(v)] += 1;
      }
    }
  }
  for (NodeId u = 0; u < s_size; ++u) {
    if (consumed[static_cast<std::size_t>(u)] > marks)
      throw std::runtime_error("concentrated_model: consumed more stubs than marked");
  }

  // Everything not consumed (unmarked plus unchosen marked) is matched
  // uniformly; with `simple`, only this phase is retried.
  std::vector<NodeId> residual_base;
  for (NodeId u = 0; u < seq.n; ++u) {
    const std::int64_t d = degrees[static_cast<std::size_t>(u)] -
                           (u < s_size ? consumed[static_cast<std::size_t>(u)] : 0);
    for (std::int64_t i = 0; i < d; ++i) residual_base.push_back(u);
  }

  for (int attempt = 0;; ++attempt) {
    std::vector<NodeId> stubs = residual_base;
    std::vector<Edge> residual = match_stubs_uniform(stubs, rng);
    g.edges = planted;
    g.edges.insert(g.edges.end(), residual.begin(), residual.end());
    if (!simple || is_simple(g.edges)) break;
    if (attempt + 1 >= retry_cap)
      throw GenerationError("concentrated_model: no simple residual matching within retry cap");
  }

  GroundTruth truth;
  truth.gamma = gamma;
  truth.delta = delta;
  truth.s.resize(static_cast<std::size_t>(s_size));
  for (NodeId u = 0; u < s_size; ++u) truth.s[static_cast<std::size_t>(u)] = u;
  return {std::move(g), std::move(truth)};
}

double gamma_density(const MultiGraph& g, std::span<const NodeId> s) {
  std::unordered_set<NodeId> members(s.begin(), s.end());
  const auto size = static_cast<std::int64_t>(members.size());
  if (size < 2) throw std::invalid_argument("gamma_density: need at least 2 nodes");

  std::unordered_set<std::uint64_t> internal;
  for (const auto& [u, v] : g.edges) {
    if (u == v) continue;
    if (members.count(u) && members.count(v)) internal.insert(edge_key(normalized(u, v)));
  }
  const double pairs = 0.5 * static_cast<double>(size) * static_cast<double>(size - 1);
  return static_cast<double>(internal.size()) / pairs;
}

MultiGraph erdos_renyi(std::int64_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("erdos_renyi: p must be in [0, 1]");
  MultiGraph g;
  g.n = n;
  g.simple = true;
  if (n < 2 || p == 0.0) return g;
  if (p == 1.0) {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
    return g;
  }

  // Geometric skips through the lexicographic pair order.
  CounterRng rng(seed, rng_stream::kGraphGen);
  const double log_q = std::log1p(-p);
  NodeId v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double r = rng.next_double();
    const double skip = std::floor(std::log1p(-r) / log_q);
    w += 1 + static_cast<std::int64_t>(std::min(skip, 4.0e18));
    while (w >= v && v < n) {
      w -= v;
      v += 1;
    }
    if (v < n) g.edges.emplace_back(static_cast<NodeId>(w), v);
  }
  return g;
}

void write_edge_list(std::ostream& out, const MultiGraph& g) {
  out << "# n=" << g.n << '\n';
  for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

MultiGraph read_edge_list(std::istream& in) {
  MultiGraph g;
  std::string line;
  std::int64_t line_no = 0;
  bool have_n = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("n=");
      if (pos != std::string::npos) {
        g.n = std::stoll(line.substr(pos + 2));
        have_n = true;
      }
      continue;
    }
    std::istringstream ls(line);
    NodeId u = 0, v = 0;
    if (!(ls >> u >> v)) throw ParseError("edge list: expected 'u v'", line_no);
    if (u < 0 || v < 0) throw ParseError("edge list: negative node id", line_no);
    g.edges.push_back(normalized(u, v));
    g.n = std::max({g.n, u + 1, v + 1});
  }
  if (!have_n && g.edges.empty()) g.n = 0;
  return g;
}

void write_node_set(std::ostream& out, std::span<const NodeId> nodes) {
  for (const auto u : nodes) out << u << '\n';
}

std::vector<NodeId> read_node_set(std::istream& in) {
  std::vector<NodeId> nodes;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    NodeId u = 0;
    if (!(ls >> u)) throw ParseError("node set: expected a node id", line_no);
    nodes.push_back(u);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

}  // namespace densestream
