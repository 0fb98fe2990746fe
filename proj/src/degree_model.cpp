#include "densestream/degree_model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace densestream {

std::int64_t DegreeSequence::total_nodes() const {
  std::int64_t total = 0;
  for (const auto& [d, cnt] : counts) total += cnt;
  return total;
}

std::int64_t DegreeSequence::degree_sum() const {
  std::int64_t sum = 0;
  for (const auto& [d, cnt] : counts) sum += d * cnt;
  return sum;
}

std::int64_t DegreeSequence::max_degree() const {
  for (auto it = counts.rbegin(); it != counts.rend(); ++it)
    if (it->second > 0) return it->first;
  return 0;
}

void DegreeSequence::validate() const {
  for (const auto& [d, cnt] : counts) {
    if (d < 0) throw std::invalid_argument("degree sequence: negative degree");
    if (cnt < 0) throw std::invalid_argument("degree sequence: negative count");
  }
  if (total_nodes() != n) throw std::invalid_argument("degree sequence: counts do not total n");
  if (degree_sum() % 2 != 0) throw std::invalid_argument("degree sequence: odd degree sum");
}

namespace {

std::int64_t power_law_total(std::int64_t n, double c) {
  if (c <= 0.0) return 0;
  std::int64_t total = 0;
  for (std::int64_t i = 1;; ++i) {
    const auto term = static_cast<std::int64_t>(static_cast<double>(n) * c / (static_cast<double>(i) * static_cast<double>(i)));
    if (term <= 0) break;
    total += term;
  }
  return total;
}

}  // namespace

double solve_zipf_constant(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("solve_zipf_constant: n must be >= 2");
  double lo = 0.0, hi = 1.0;
  while (power_law_total(n, hi) < n) {
    lo = hi;
    hi *= 2.0;
  }
  // The total is a non-decreasing step function of c; bisect to the lowest
  // step at or above n.
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (power_law_total(n, mid) >= n)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

namespace {

// Choose degree-1 / degree-0 counts so the sequence has exactly n nodes, an
// even degree sum, and at most one degree-0 node. Rounding can leave a
// one-node surplus after the bisection; it is absorbed here.
void fix_low_degrees(DegreeSequence& seq, std::int64_t n) {
  std::int64_t rest_nodes = 0, rest_degsum = 0;
  for (const auto& [d, cnt] : seq.counts) {
    rest_nodes += cnt;
    rest_degsum += d * cnt;
  }
  std::int64_t d1 = n - rest_nodes;  // all remaining nodes as degree 1
  std::int64_t d0 = 0;
  if ((rest_degsum + d1) % 2 != 0) {
    d1 -= 1;
    d0 = 1;
  }
  // The bisection can land on a floor jump that covers several degrees at
  // once; the surplus is absorbed by the degree-1 count. A negative count
  // would mean the constant drifted past its step, which cannot be fixed up.
  if (d1 < 0)
    throw std::runtime_error("zipf_sequence: parity resolution infeasible (constant drift)");
  if (d1 > 0) seq.counts[1] = d1;
  if (d0 > 0) seq.counts[0] = d0;
}

}  // namespace

DegreeSequence zipf_sequence(std::int64_t n) {
  DegreeSequence seq;
  seq.n = n;
  seq.c = solve_zipf_constant(n);
  for (std::int64_t i = 2;; ++i) {
    const auto cnt = static_cast<std::int64_t>(static_cast<double>(n) * seq.c / (static_cast<double>(i) * static_cast<double>(i)));
    if (cnt <= 0) break;
    seq.counts[i] = cnt;
  }
  fix_low_degrees(seq, n);
  seq.validate();
  return seq;
}

DegreeSequence zipf_sequence_with_floor(std::int64_t n, std::int64_t count,
                                        std::int64_t floor_degree) {
  if (count < 0 || count > n) throw std::invalid_argument("zipf_sequence_with_floor: bad count");
  DegreeSequence base = zipf_sequence(n);
  if (count == 0) return base;

  std::vector<std::int64_t> degrees = assign_degrees(base);
  for (std::int64_t i = 0; i < count; ++i) degrees[static_cast<std::size_t>(i)] = std::max(degrees[static_cast<std::size_t>(i)], floor_degree);

  DegreeSequence boosted;
  boosted.n = n;
  boosted.c = base.c;
  for (const auto d : degrees) boosted.counts[d] += 1;
  if (boosted.degree_sum() % 2 != 0) {
    // move one node between degree 1 and degree 0
    if (boosted.counts[1] > 0) {
      boosted.counts[1] -= 1;
      boosted.counts[0] += 1;
    } else {
      boosted.counts[0] -= 1;
      boosted.counts[1] += 1;
    }
    for (auto it = boosted.counts.begin(); it != boosted.counts.end();) {
      if (it->second == 0)
        it = boosted.counts.erase(it);
      else
        ++it;
    }
  }
  boosted.validate();
  return boosted;
}

bool erdos_gallai_feasible(std::span<const std::int64_t> degrees) {
  if (degrees.empty()) return false;
  std::vector<std::int64_t> d(degrees.begin(), degrees.end());
  for (const auto x : d)
    if (x < 0) return false;
  std::sort(d.begin(), d.end(), std::greater<>());

  const auto n = static_cast<std::int64_t>(d.size());
  std::vector<std::int64_t> prefix(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t i = 0; i < n; ++i) prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + d[static_cast<std::size_t>(i)];
  if (prefix[static_cast<std::size_t>(n)] % 2 != 0) return false;

  for (std::int64_t k = 1; k <= n; ++k) {
    // among i > k (0-based index >= k), split at the first degree < k
    const auto* begin = d.data() + k;
    const auto* end = d.data() + n;
    const auto* split = std::lower_bound(begin, end, k, std::greater_equal<>());
    const std::int64_t big = split - begin;            // degrees >= k, each contributes k
    const std::int64_t small_sum = prefix[static_cast<std::size_t>(n)] - prefix[static_cast<std::size_t>(k + big)];
    const std::int64_t rhs = k * (k - 1) + big * k + small_sum;
    if (prefix[static_cast<std::size_t>(k)] > rhs) return false;
  }
  return true;
}

SequenceStats sequence_stats(const DegreeSequence& seq,
                             std::span<const std::int64_t> ge_thresholds) {
  seq.validate();
  SequenceStats stats;
  const std::int64_t degsum = seq.degree_sum();
  stats.m = degsum / 2;
  stats.avg_degree = seq.n > 0 ? static_cast<double>(degsum) / static_cast<double>(seq.n) : 0.0;
  for (const auto t : ge_thresholds) {
    std::int64_t cnt = 0;
    for (auto it = seq.counts.lower_bound(t); it != seq.counts.end(); ++it) cnt += it->second;
    stats.count_ge[t] = cnt;
  }
  return stats;
}

std::vector<std::int64_t> assign_degrees(const DegreeSequence& seq) {
  std::vector<std::int64_t> degrees;
  degrees.reserve(static_cast<std::size_t>(seq.n));
  for (auto it = seq.counts.rbegin(); it != seq.counts.rend(); ++it)
    for (std::int64_t i = 0; i < it->second; ++i) degrees.push_back(it->first);
  return degrees;
}

void write_degree_sequence(std::ostream& out, const DegreeSequence& seq) {
  for (const auto& [d, cnt] : seq.counts) out << d << ' ' << cnt << '\n';
}

DegreeSequence read_degree_sequence(std::istream& in) {
  DegreeSequence seq;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::int64_t d = 0, cnt = 0;
    if (!(ls >> d >> cnt)) throw ParseError("degree sequence: expected 'degree count'", line_no);
    std::string extra;
    if (ls >> extra) throw ParseError("degree sequence: trailing tokens", line_no);
    seq.counts[d] += cnt;
  }
  seq.n = seq.total_nodes();
  return seq;
}

}  // namespace densestream
