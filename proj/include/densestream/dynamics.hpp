#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "densestream/common.hpp"
#include "densestream/degree_model.hpp"
#include "densestream/graph_gen.hpp"
#include "densestream/rng.hpp"
#include "densestream/stream.hpp"

namespace densestream {

enum class DynamicsMode { Uniform, Concentrated };

struct PhaseSpec {
  DynamicsMode mode = DynamicsMode::Uniform;
  std::int64_t steps = 0;
};

struct DynamicsConfig {
  std::int64_t q = 2;                // edges rewired per step
  std::vector<PhaseSpec> schedule;   // executed in order
  std::vector<NodeId> s;             // target set for concentrated phases
  double gamma = 1.0;
  bool keep_step_logs = true;        // per-step deltas can be large; optional

  void validate() const;
};

// Which branch a concentrated step took: 1 = the predicate held before the
// step and every class was rematched within itself; 2 = even converting all
// cut pairs cannot reach the predicate, so all are converted (odd leftover
// stays a cut edge); 3 = exactly enough cut pairs were converted to reach it.
enum class ConcentratedCase { RematchWithinClasses = 1, ConvertAllCut = 2, ConvertToReach = 3 };

struct StepDelta {
  std::int64_t tick = 0;
  DynamicsMode mode = DynamicsMode::Uniform;
  ConcentratedCase s_case = ConcentratedCase::RematchWithinClasses;  // concentrated steps only
  std::vector<Edge> removed;
  std::vector<Edge> added;
};

// A degree-preserving rewiring chain over a multigraph: every step removes q
// edges uniformly from the edge multiset and rematches the 2q freed stubs, so
// the degree sequence is invariant. No rejection happens mid-chain;
// self-loops and duplicate edges are allowed and discounted downstream.
// A chain is strictly sequential; run independent seeds for trial batches.
class ChainState {
 public:
  explicit ChainState(MultiGraph g);

  // Enables S-tracking for concentrated steps. The chain's dense-subgraph
  // predicate counts S-internal edge slots with multiplicity (the quantity a
  // class-preserving rematch conserves exactly): internal >= ceil(gamma *
  // |S|(|S|-1)/2).
  void bind_target(std::vector<NodeId> s, double gamma);

  std::int64_t node_count() const { return n_; }
  std::int64_t tick() const { return tick_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_target() const { return has_target_; }
  std::int64_t internal_edges() const;
  std::int64_t internal_target() const;

  MultiGraph snapshot() const;

  // Remove q uniform edges, rematch all 2q stubs uniformly.
  StepDelta step_uniform(std::int64_t q, CounterRng& rng);

  // Remove q uniform edges; partition them into S-internal, external and cut;
  // then (1) rematch within classes if the predicate already held, else
  // convert cut stub pairs into internal edges, all of them (2) or just
  // enough to reach the predicate (3). Requires a bound target.
  StepDelta step_concentrated(std::int64_t q, CounterRng& rng);

 private:
  std::vector<Edge> remove_uniform(std::int64_t q, CounterRng& rng);
  void add_edges(std::span<const Edge> batch, StepDelta& delta);

  std::vector<Edge> edges_;
  std::int64_t n_ = 0;
  std::int64_t tick_ = 0;
  bool has_target_ = false;
  std::vector<char> in_s_;
  std::int64_t s_size_ = 0;
  double gamma_ = 1.0;
  std::int64_t internal_count_ = 0;
  std::int64_t internal_target_ = 0;
};

struct ScheduleRun {
  struct PhaseSpan {
    DynamicsMode mode;
    std::int64_t first_tick;  // first tick of the phase (> last_tick when empty)
    std::int64_t last_tick;
  };
  std::vector<TimestampedEdge> stream;  // initial edges at tick 0, step i adds at tick i
  std::vector<PhaseSpan> phases;
  std::vector<StepDelta> logs;  // populated when cfg.keep_step_logs
};

// Executes the schedule from the initial graph, emitting every added edge
// with its step index as timestamp so windows can be built downstream.
ScheduleRun run_schedule(const MultiGraph& initial, const DynamicsConfig& cfg, std::uint64_t seed);

// Empirical visit counts of the uniform chain over its reachable states,
// keyed by canonical edge list. Each trial starts from a fresh configuration
// model draw (already stationary) and records the state after every step.
// Throws std::invalid_argument when the state space exceeds 10^4 multigraphs
// or the stub count exceeds the enumeration cap.
std::map<std::string, std::int64_t> stationarity_probe(const DegreeSequence& seq, std::int64_t q,
                                                       std::int64_t steps, std::int64_t trials,
                                                       std::uint64_t seed);

}  // namespace densestream
