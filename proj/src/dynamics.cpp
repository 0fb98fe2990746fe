#include "densestream/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "densestream/oracles.hpp"

namespace densestream {

void DynamicsConfig::validate() const {
  if (q < 1) throw std::invalid_argument("dynamics: q must be >= 1");
  bool concentrated = false;
  for (const auto& phase : schedule) {
    if (phase.steps < 0) throw std::invalid_argument("dynamics: negative phase duration");
    if (phase.mode == DynamicsMode::Concentrated) concentrated = true;
  }
  if (concentrated && s.size() < 2)
    throw std::invalid_argument("dynamics: concentrated phases need a target set");
  if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("dynamics: gamma must be in (0, 1]");
}

ChainState::ChainState(MultiGraph g) : edges_(std::move(g.edges)), n_(g.n) {}

void ChainState::bind_target(std::vector<NodeId> s, double gamma) {
  if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("bind_target: gamma in (0, 1]");
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.size() < 2) throw std::invalid_argument("bind_target: need at least 2 nodes");
  if (s.front() < 0 || s.back() >= n_) throw std::invalid_argument("bind_target: node id out of range");

  in_s_.assign(static_cast<std::size_t>(n_), 0);
  for (const auto u : s) in_s_[static_cast<std::size_t>(u)] = 1;
  s_size_ = static_cast<std::int64_t>(s.size());
  gamma_ = gamma;
  const double pairs = 0.5 * static_cast<double>(s_size_) * static_cast<double>(s_size_ - 1);
  internal_target_ = static_cast<std::int64_t>(std::ceil(gamma * pairs - 1e-9));
  internal_count_ = 0;
  for (const auto& [u, v] : edges_)
    if (in_s_[static_cast<std::size_t>(u)] && in_s_[static_cast<std::size_t>(v)]) ++internal_count_;
  has_target_ = true;
}

std::int64_t ChainState::internal_edges() const {
  if (!has_target_) throw std::logic_error("internal_edges: no target bound");
  return internal_count_;
}

std::int64_t ChainState::internal_target() const {
  if (!has_target_) throw std::logic_error("internal_target: no target bound");
  return internal_target_;
}

MultiGraph ChainState::snapshot() const {
  MultiGraph g;
  g.n = n_;
  g.edges = edges_;
  return g;
}

std::vector<Edge> ChainState::remove_uniform(std::int64_t q, CounterRng& rng) {
  const auto m = static_cast<std::int64_t>(edges_.size());
  if (q < 1) throw std::invalid_argument("dynamics step: q must be >= 1");
  if (q > m) throw std::invalid_argument("dynamics step: q exceeds edge count");
  for (std::int64_t j = 0; j < q; ++j) {
    const auto i = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(m - j)));
    std::swap(edges_[i], edges_[static_cast<std::size_t>(m - 1 - j)]);
  }
  std::vector<Edge> removed(edges_.end() - q, edges_.end());
  edges_.resize(static_cast<std::size_t>(m - q));
  if (has_target_) {
    for (const auto& [u, v] : removed)
      if (in_s_[static_cast<std::size_t>(u)] && in_s_[static_cast<std::size_t>(v)]) --internal_count_;
  }
  return removed;
}

void ChainState::add_edges(std::span<const Edge> batch, StepDelta& delta) {
  for (const auto& e : batch) {
    edges_.push_back(e);
    delta.added.push_back(e);
    if (has_target_ && in_s_[static_cast<std::size_t>(e.first)] && in_s_[static_cast<std::size_t>(e.second)])
      ++internal_count_;
  }
}

StepDelta ChainState::step_uniform(std::int64_t q, CounterRng& rng) {
  StepDelta delta;
  delta.mode = DynamicsMode::Uniform;
  delta.removed = remove_uniform(q, rng);

  std::vector<NodeId> stubs;
  stubs.reserve(static_cast<std::size_t>(2 * q));
  for (const auto& [u, v] : delta.removed) {
    stubs.push_back(u);
    stubs.push_back(v);
  }
  const std::vector<Edge> rematched = match_stubs_uniform(stubs, rng);
  add_edges(rematched, delta);
  delta.tick = ++tick_;
  return delta;
}

StepDelta ChainState::step_concentrated(std::int64_t q, CounterRng& rng) {
  if (!has_target_) throw std::logic_error("step_concentrated: no target bound");

  const bool held_before = internal_count_ >= internal_target_;
  StepDelta delta;
  delta.mode = DynamicsMode::Concentrated;
  delta.removed = remove_uniform(q, rng);

  // Partition the freed stubs by the class of their edge. A cut edge frees
  // one stub on each side.
  std::vector<NodeId> internal_stubs, external_stubs, cut_s, cut_out;
  for (const auto& [u, v] : delta.removed) {
    const bool us = in_s_[static_cast<std::size_t>(u)];
    const bool vs = in_s_[static_cast<std::size_t>(v)];
    if (us && vs) {
      internal_stubs.push_back(u);
      internal_stubs.push_back(v);
    } else if (!us && !vs) {
      external_stubs.push_back(u);
      external_stubs.push_back(v);
    } else {
      cut_s.push_back(us ? u : v);
      cut_out.push_back(us ? v : u);
    }
  }
  const auto q_cut = static_cast<std::int64_t>(cut_s.size());
  const std::int64_t q_int = static_cast<std::int64_t>(internal_stubs.size()) / 2;
  const std::int64_t max_convert = q_cut / 2;

  std::int64_t convert = 0;
  if (held_before) {
    delta.s_case = ConcentratedCase::RematchWithinClasses;
  } else if (internal_count_ + q_int + max_convert < internal_target_) {
    delta.s_case = ConcentratedCase::ConvertAllCut;
    convert = max_convert;
  } else {
    delta.s_case = ConcentratedCase::ConvertToReach;
    convert = internal_target_ - internal_count_ - q_int;
  }

  // Conversion moves 2*convert uniformly chosen S-side cut stubs into the
  // internal pool; the matching S-bar stubs join the external pool.
  if (convert > 0) {
    fisher_yates(cut_s, rng);
    fisher_yates(cut_out, rng);
    for (std::int64_t i = 0; i < 2 * convert; ++i) {
      internal_stubs.push_back(cut_s.back());
      cut_s.pop_back();
      external_stubs.push_back(cut_out.back());
      cut_out.pop_back();
    }
  }

  const std::vector<Edge> new_internal = match_stubs_uniform(internal_stubs, rng);
  const std::vector<Edge> new_external = match_stubs_uniform(external_stubs, rng);
  add_edges(new_internal, delta);
  add_edges(new_external, delta);

  // Remaining cut stubs re-pair across the boundary, uniformly.
  fisher_yates(cut_out, rng);
  std::vector<Edge> new_cut;
  new_cut.reserve(cut_s.size());
  for (std::size_t i = 0; i < cut_s.size(); ++i) new_cut.push_back(normalized(cut_s[i], cut_out[i]));
  add_edges(new_cut, delta);

  delta.tick = ++tick_;
  return delta;
}

ScheduleRun run_schedule(const MultiGraph& initial, const DynamicsConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ChainState chain(initial);
  bool needs_target = false;
  for (const auto& phase : cfg.schedule)
    if (phase.mode == DynamicsMode::Concentrated) needs_target = true;
  if (needs_target) chain.bind_target(cfg.s, cfg.gamma);

  ScheduleRun run;
  run.stream.reserve(initial.edges.size());
  for (const auto& [u, v] : initial.edges) run.stream.push_back({u, v, 0});

  CounterRng rng(seed, rng_stream::kDynamics);
  for (const auto& phase : cfg.schedule) {
    ScheduleRun::PhaseSpan span{phase.mode, chain.tick() + 1, chain.tick() + phase.steps};
    run.phases.push_back(span);
    for (std::int64_t i = 0; i < phase.steps; ++i) {
      StepDelta delta = phase.mode == DynamicsMode::Uniform ? chain.step_uniform(cfg.q, rng)
                                                            : chain.step_concentrated(cfg.q, rng);
      for (const auto& [u, v] : delta.added) run.stream.push_back({u, v, delta.tick});
      if (cfg.keep_step_logs) run.logs.push_back(std::move(delta));
    }
  }
  return run;
}

std::map<std::string, std::int64_t> stationarity_probe(const DegreeSequence& seq, std::int64_t q,
                                                       std::int64_t steps, std::int64_t trials,
                                                       std::uint64_t seed) {
  seq.validate();
  const std::vector<std::int64_t> degrees = assign_degrees(seq);
  const MatchingCensus census = oracle_matchings(degrees);  // throws past the stub cap
  if (static_cast<std::int64_t>(census.by_graph.size()) > 10000)
    throw std::invalid_argument("stationarity_probe: state space too large");
  const std::int64_t m = seq.degree_sum() / 2;
  if (q > m) throw std::invalid_argument("stationarity_probe: q exceeds edge count");

  std::map<std::string, std::int64_t> visits;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(trial);
    ChainState chain(configuration_model(degrees, false, trial_seed));
    CounterRng rng(trial_seed, rng_stream::kDynamics);
    for (std::int64_t i = 0; i < steps; ++i) {
      chain.step_uniform(q, rng);
      visits[canonical_edge_key(chain.edges())] += 1;
    }
  }
  return visits;
}

}  // namespace densestream
