#include "densestream/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace densestream {

std::vector<std::vector<NodeId>> oracle_components(std::span<const Edge> edges) {
  std::unordered_map<NodeId, std::vector<NodeId>> adj;
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  if (adj.size() > 1000) throw std::invalid_argument("oracle_components: more than 1000 nodes");

  std::unordered_set<NodeId> seen;
  std::vector<std::vector<NodeId>> components;
  for (const auto& [start, _] : adj) {
    if (seen.count(start)) continue;
    std::vector<NodeId> comp;
    std::deque<NodeId> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      comp.push_back(u);
      for (const NodeId v : adj[u]) {
        if (seen.insert(v).second) queue.push_back(v);
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  std::sort(components.begin(), components.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return components;
}

std::vector<NodeId> oracle_two_core(std::span<const NodeId> nodes, std::span<const Edge> edges) {
  std::set<NodeId> alive(nodes.begin(), nodes.end());
  for (const auto& [u, v] : edges) {
    alive.insert(u);
    alive.insert(v);
  }
  if (alive.size() > 1000) throw std::invalid_argument("oracle_two_core: more than 1000 nodes");

  std::set<Edge> simple;
  for (const auto& [u, v] : edges)
    if (u != v) simple.insert(normalized(u, v));

  for (;;) {
    std::map<NodeId, std::int64_t> degree;
    for (const NodeId u : alive) degree[u] = 0;
    for (const auto& [u, v] : simple) {
      if (alive.count(u) && alive.count(v)) {
        degree[u] += 1;
        degree[v] += 1;
      }
    }
    std::vector<NodeId> drop;
    for (const auto& [u, d] : degree)
      if (d <= 1) drop.push_back(u);
    if (drop.empty()) break;
    for (const NodeId u : drop) alive.erase(u);
  }
  return {alive.begin(), alive.end()};
}

std::string canonical_edge_key(std::span<const Edge> edges) {
  std::vector<Edge> sorted;
  sorted.reserve(edges.size());
  for (const auto& [u, v] : edges) sorted.push_back(normalized(u, v));
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i) out << ',';
    out << sorted[i].first << '-' << sorted[i].second;
  }
  return out.str();
}

namespace {

void enumerate_matchings(std::vector<NodeId>& stubs, std::vector<char>& used,
                         std::vector<Edge>& current, MatchingCensus& census) {
  std::size_t first = 0;
  while (first < used.size() && used[first]) ++first;
  if (first == used.size()) {
    census.total += 1;
    census.by_graph[canonical_edge_key(current)] += 1;
    return;
  }
  used[first] = 1;
  for (std::size_t j = first + 1; j < used.size(); ++j) {
    if (used[j]) continue;
    used[j] = 1;
    current.push_back(normalized(stubs[first], stubs[j]));
    enumerate_matchings(stubs, used, current, census);
    current.pop_back();
    used[j] = 0;
  }
  used[first] = 0;
}

}  // namespace

MatchingCensus oracle_matchings(std::span<const std::int64_t> degrees) {
  std::vector<NodeId> stubs;
  for (std::size_t u = 0; u < degrees.size(); ++u) {
    if (degrees[u] < 0) throw std::invalid_argument("oracle_matchings: negative degree");
    for (std::int64_t i = 0; i < degrees[u]; ++i) stubs.push_back(static_cast<NodeId>(u));
  }
  if (stubs.size() % 2 != 0) throw std::invalid_argument("oracle_matchings: odd stub count");
  if (stubs.size() > 12) throw std::invalid_argument("oracle_matchings: more than 12 stubs");

  MatchingCensus census;
  if (stubs.empty()) {
    census.total = 1;
    census.by_graph[""] = 1;
    return census;
  }
  std::vector<char> used(stubs.size(), 0);
  std::vector<Edge> current;
  enumerate_matchings(stubs, used, current, census);
  return census;
}

namespace {

// Regularized lower incomplete gamma P(a, x), series expansion (x < a + 1).
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int i = 1; i < 500; ++i) {
    term *= x / (a + i);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x), continued fraction (x >= a + 1).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi_square_pvalue(double stat, int df) {
  if (df <= 0) throw std::invalid_argument("chi_square_pvalue: df must be positive");
  if (stat <= 0.0) return 1.0;
  const double a = 0.5 * df;
  const double x = 0.5 * stat;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_stat(std::span<const std::int64_t> observed, std::span<const double> expected_probs) {
  if (observed.size() != expected_probs.size())
    throw std::invalid_argument("chi_square_stat: size mismatch");
  std::int64_t total = 0;
  for (const auto o : observed) total += o;
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expect = expected_probs[i] * static_cast<double>(total);
    if (expect <= 0.0) throw std::invalid_argument("chi_square_stat: nonpositive expected count");
    const double diff = static_cast<double>(observed[i]) - expect;
    stat += diff * diff / expect;
  }
  return stat;
}

}  // namespace densestream
