#include "densestream/sketch.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace densestream {

const std::vector<NodeId>& ComponentSummary::largest() const {
  static const std::vector<NodeId> empty;
  return components.empty() ? empty : components.front();
}

std::int64_t ComponentSummary::largest_size() const {
  return components.empty() ? 0 : static_cast<std::int64_t>(components.front().size());
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t size) : parent_(size), size_(size, 1) {
    for (std::size_t i = 0; i < size; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t u) {
    while (parent_[u] != u) {
      parent_[u] = parent_[parent_[u]];  // path halving
      u = parent_[u];
    }
    return u;
  }

  void unite(std::size_t u, std::size_t v) {
    std::size_t ru = find(u), rv = find(v);
    if (ru == rv) return;
    if (size_[ru] < size_[rv]) std::swap(ru, rv);
    parent_[rv] = ru;
    size_[ru] += size_[rv];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

ComponentSummary connected_components(std::span<const Edge> edges) {
  std::unordered_map<NodeId, std::size_t> index;
  std::vector<NodeId> ids;
  auto intern = [&](NodeId u) {
    const auto [it, inserted] = index.try_emplace(u, ids.size());
    if (inserted) ids.push_back(u);
    return it->second;
  };

  std::vector<std::pair<std::size_t, std::size_t>> compact;
  compact.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    compact.emplace_back(intern(u), intern(v));
  }

  UnionFind uf(ids.size());
  for (const auto& [a, b] : compact) uf.unite(a, b);

  std::unordered_map<std::size_t, std::vector<NodeId>> groups;
  for (std::size_t i = 0; i < ids.size(); ++i) groups[uf.find(i)].push_back(ids[i]);

  ComponentSummary summary;
  summary.components.reserve(groups.size());
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    summary.components.push_back(std::move(members));
  }
  std::sort(summary.components.begin(), summary.components.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a.front() < b.front();
            });
  return summary;
}

std::vector<NodeId> two_core(std::span<const NodeId> nodes, std::span<const Edge> edges) {
  std::unordered_map<NodeId, std::size_t> index;
  std::vector<NodeId> ids;
  auto intern = [&](NodeId u) {
    const auto [it, inserted] = index.try_emplace(u, ids.size());
    if (inserted) ids.push_back(u);
    return it->second;
  };
  for (const auto u : nodes) intern(u);

  std::unordered_set<std::uint64_t> simple;
  simple.reserve(edges.size() * 2);
  std::vector<std::pair<std::size_t, std::size_t>> compact;
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    if (!simple.insert(edge_key(normalized(u, v))).second) continue;
    compact.emplace_back(intern(u), intern(v));
  }

  std::vector<std::vector<std::size_t>> adj(ids.size());
  for (const auto& [a, b] : compact) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  std::vector<std::int64_t> degree(ids.size());
  std::vector<char> alive(ids.size(), 1);
  std::deque<std::size_t> peel;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    degree[i] = static_cast<std::int64_t>(adj[i].size());
    if (degree[i] <= 1) peel.push_back(i);
  }
  while (!peel.empty()) {
    const std::size_t u = peel.front();
    peel.pop_front();
    if (!alive[u]) continue;
    alive[u] = 0;
    for (const std::size_t v : adj[u]) {
      if (!alive[v]) continue;
      if (--degree[v] == 1) peel.push_back(v);
    }
  }

  std::vector<NodeId> survivors;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (alive[i]) survivors.push_back(ids[i]);
  std::sort(survivors.begin(), survivors.end());
  return survivors;
}

ReservoirDegreeStats reservoir_degree_stats(std::span<const Edge> edges) {
  std::unordered_map<NodeId, std::int64_t> degree;
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    degree[u] += 1;
    degree[v] += 1;
  }

  ReservoirDegreeStats stats;
  stats.n_r = static_cast<std::int64_t>(degree.size());
  for (const auto& [u, d] : degree) stats.x[d] += 1;
  std::int64_t q_num = 0;
  for (const auto& [d, cnt] : stats.x) {
    stats.i_star = std::max(stats.i_star, d);
    q_num += d * (d - 2) * cnt;
  }
  if (stats.n_r > 0) {
    const auto it = stats.x.find(1);
    const std::int64_t x1 = it == stats.x.end() ? 0 : it->second;
    stats.x1_ratio = static_cast<double>(x1) / static_cast<double>(stats.n_r);
    stats.q_stat = static_cast<double>(q_num) / static_cast<double>(stats.n_r);
  }
  return stats;
}

std::string stats_to_json(const ReservoirDegreeStats& stats) {
  std::ostringstream out;
  out << "{\"n_r\":" << stats.n_r << ",\"x\":[";
  bool first = true;
  for (const auto& [d, cnt] : stats.x) {
    if (!first) out << ',';
    first = false;
    out << '[' << d << ',' << cnt << ']';
  }
  out << "],\"i_star\":" << stats.i_star << ",\"x1_ratio\":" << stats.x1_ratio
      << ",\"q_stat\":" << stats.q_stat << '}';
  return out.str();
}

}  // namespace densestream
