#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "densestream/common.hpp"
#include "densestream/graph_gen.hpp"
#include "densestream/stream.hpp"

namespace densestream {

// Knobs for the detection pipeline. alpha/c left at 0 are derived on use:
// alpha = 2(1+epsilon)/(gamma*delta), which clears the acceptance hypothesis
// alpha > (1+epsilon)/(gamma*delta) with factor-2 headroom; c is the
// power-law constant solved for n. Setting c = 4m/(n ln n) for a stream of m
// edges makes the reservoir capacity realize the sampling rate alpha/sqrt(n).
struct DetectionParams {
  double gamma = 1.0;
  double delta = 1.0;
  double epsilon = 0.1;
  double alpha = 0.0;           // <= 0: derive
  double c = 0.0;               // <= 0: solve from n
  double threshold_coeff = 1.0;
  std::optional<std::int64_t> k_override;
  std::optional<std::int64_t> threshold_override;  // test hook / calibration

  double resolved_alpha() const;
  double resolved_c(std::int64_t n) const;
};

// k = ceil(c * alpha * sqrt(n) * ln(n) / 4). Against a stream of about
// c*n*ln(n)/4 edges this samples at rate alpha/sqrt(n). Requires n >= 4.
std::int64_t reservoir_capacity(std::int64_t n, const DetectionParams& params);

// Capacity with the k override applied; what the harness actually uses.
std::int64_t effective_capacity(std::int64_t n, const DetectionParams& params);

// T = ceil(coeff * n^{1/8} * ln(n)^2). Requires n >= 2.
std::int64_t detection_threshold(std::int64_t n, double coeff = 1.0);

std::int64_t effective_threshold(std::int64_t n, const DetectionParams& params);

struct DetectionVerdict {
  bool accept = false;
  std::int64_t largest_size = 0;
  std::int64_t threshold = 0;
  std::optional<std::int64_t> window_index;
};

// Accept iff the largest connected component of the reservoir reaches the
// detection threshold.
DetectionVerdict detect_static(const Reservoir& r, std::int64_t n, const DetectionParams& params);

// Below threshold: nothing. Otherwise the 2-core of the largest component.
std::optional<std::vector<NodeId>> reconstruct_static(const Reservoir& r, std::int64_t n,
                                                      const DetectionParams& params);

// Accept at the first window whose largest component reaches the threshold
// (index recorded); reject with the best size seen otherwise.
DetectionVerdict detect_dynamic(const WindowedStream& windows, std::int64_t n,
                                const DetectionParams& params);
DetectionVerdict detect_dynamic(const WindowedStream& windows,
                                std::span<const std::int64_t> n_per_window,
                                const DetectionParams& params);

// How many independent accepting windows to union: ceil(log(eps)/log(rho)),
// where rho is the assumed single-window miss rate.
struct EstimationConfig {
  double epsilon_tol = 0.0;
  double rho = 0.0;
  std::int64_t windows_required = 0;

  static EstimationConfig from(double epsilon_tol, double rho);
};

struct DynamicEstimate {
  std::vector<NodeId> nodes;                 // union of 2-cores, sorted
  std::vector<std::int64_t> window_indices;  // accepting windows used
  bool insufficient_windows = false;
};

// Union of the 2-cores of the largest components over the first
// `windows_required` accepting windows spaced at least tau/lambda apart
// (earliest ones taken greedily). Runs out of windows: partial union with
// the insufficient flag set.
DynamicEstimate estimate_dynamic(const WindowedStream& windows, std::int64_t n,
                                 const DetectionParams& params, const EstimationConfig& est);

struct ApproxScore {
  std::int64_t missed = 0;    // |S \ S_hat|
  std::int64_t spurious = 0;  // |S_hat \ S|
  std::optional<double> precision;  // empty when S_hat is empty
  std::optional<double> recall;     // empty when S is empty
};

ApproxScore approximation_metrics(std::span<const NodeId> s_hat, const GroundTruth& truth);

}  // namespace densestream
