#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "densestream/degree_model.hpp"
#include "densestream/detector.hpp"
#include "densestream/graph_gen.hpp"

namespace densestream {

using ojson = nlohmann::ordered_json;

// One experiment = one scenario run over `trials` derived seeds (seed + i).
// Everything downstream is a pure function of this struct, so identical
// configs produce byte-identical reports.
struct ExperimentConfig {
  std::string scenario;  // uniform | concentrated | er-core | step-dynamics
  std::int64_t n = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 12345;

  double gamma = 1.0;
  double delta = 1.0;
  double epsilon = 0.1;
  double alpha = 0.0;  // 0 = derive from gamma/delta/epsilon
  double c = 0.0;      // 0 = calibrate from the generated stream (or solve for n)
  double threshold_coeff = 1.0;
  std::int64_t k = 0;  // 0 = derive from the capacity formula

  double c1 = 2.0;  // er-core

  // step-dynamics
  std::int64_t tau = 0;
  std::int64_t lambda = 0;
  std::int64_t q = 0;
  std::int64_t warm_steps = 0;   // uniform prefix
  std::int64_t dense_steps = 0;  // concentrated phase
  std::int64_t cool_steps = 0;   // uniform suffix
  double eps_tol = 0.01;
  double rho = 0.1;

  std::string output;  // path prefix for <output>.json / <output>.csv; empty = no files

  // Flat "key = value" file, '#' comments. Unknown keys are errors.
  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_stream(std::istream& in);

  void validate() const;
  ojson to_json() const;
};

// Default seed when a config does not set one: $DENSESTREAM_SEED or 12345.
std::uint64_t default_seed();

struct ReportRecord {
  ojson meta;                // config echo plus derived parameters
  std::vector<ojson> rows;   // one record per trial, fixed key order
  ojson aggregates;          // per-column mean/std/ci95 (rate for booleans)
  bool any_trial_errored = false;

  ojson to_json() const;
  std::string to_csv() const;
};

ReportRecord run_experiment(const ExperimentConfig& cfg);

// Writes <prefix>.json and <prefix>.csv.
void write_report(const ReportRecord& report, const std::string& prefix);

// Aggregates recomputed from the rows themselves; the report carries the same
// object, so it is self-auditing.
ojson aggregate_rows(const std::vector<ojson>& rows);

// A planted instance at the requested parameters. When the plain power-law
// sequence lacks floor(delta*sqrt(n)) nodes of degree >= delta*sqrt(n), the
// top degrees are raised to exactly that demand first (minimal boost).
struct PlantedInstance {
  DegreeSequence seq;
  MultiGraph graph;
  GroundTruth truth;
  std::int64_t m_sequence = 0;  // degree_sum / 2 of seq
};
PlantedInstance planted_instance(std::int64_t n, double gamma, double delta, std::uint64_t seed);

// The degree sequence planted_instance would use (deterministic in n, delta).
DegreeSequence planted_sequence(std::int64_t n, double delta);

// c such that m = c * n * ln(n) / 4: calibrates the reservoir capacity
// formula to an actual edge budget, making the sampling rate alpha/sqrt(n).
double stream_budget_c(std::int64_t n, std::int64_t m);

}  // namespace densestream
