#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "densestream/common.hpp"

namespace densestream {

// Degree sequence stored as degree -> node count. `c` is the power-law
// constant solved so that sum_i floor(n*c/i^2) = n; it is kept for sequences
// derived from that family and is 0 for hand-built sequences.
struct DegreeSequence {
  std::int64_t n = 0;
  std::map<std::int64_t, std::int64_t> counts;
  double c = 0.0;

  std::int64_t total_nodes() const;
  std::int64_t degree_sum() const;   // exact integer
  std::int64_t max_degree() const;   // 0 for an empty sequence

  // Throws std::invalid_argument unless counts are non-negative, total n,
  // and the degree sum is even.
  void validate() const;
};

struct SequenceStats {
  std::int64_t m = 0;       // degree_sum / 2, exact
  double avg_degree = 0.0;  // 2m / n
  std::map<std::int64_t, std::int64_t> count_ge;  // threshold -> #nodes of degree >= threshold
};

// Smallest c (to 1e-12) with sum_i floor(n*c/i^2) >= n. Requires n >= 2.
double solve_zipf_constant(std::int64_t n);

// The inverse-square power-law sequence: floor(n*c/i^2) nodes of degree i for
// i >= 2; the degree-1 and degree-0 counts absorb rounding so that exactly n
// nodes exist, the degree sum is even, and at most one node has degree 0.
DegreeSequence zipf_sequence(std::int64_t n);

// zipf_sequence(n) with the `count` largest degrees raised to at least
// `floor_degree` (parity re-fixed through the degree-1/degree-0 counts).
// Used to plant subsets whose degree demand exceeds what the plain power law
// supplies. `c` keeps the base power-law constant.
DegreeSequence zipf_sequence_with_floor(std::int64_t n, std::int64_t count,
                                        std::int64_t floor_degree);

// True iff the degree list (any order; sorted internally) is graphical:
// even degree sum and every Erdos-Gallai prefix inequality holds.
bool erdos_gallai_feasible(std::span<const std::int64_t> degrees);

SequenceStats sequence_stats(const DegreeSequence& seq,
                             std::span<const std::int64_t> ge_thresholds = {});

// Per-node degrees, descending; node 0 gets the largest degree. This fixed
// assignment makes "the highest-degree nodes" a deterministic id range.
std::vector<std::int64_t> assign_degrees(const DegreeSequence& seq);

// Text form: one "degree count" pair per line, ascending degree.
void write_degree_sequence(std::ostream& out, const DegreeSequence& seq);
DegreeSequence read_degree_sequence(std::istream& in);

}  // namespace densestream
