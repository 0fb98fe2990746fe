#include "densestream/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "densestream/degree_model.hpp"
#include "densestream/sketch.hpp"

namespace densestream {

double DetectionParams::resolved_alpha() const {
  if (alpha > 0.0) return alpha;
  return 2.0 * (1.0 + epsilon) / (gamma * delta);
}

double DetectionParams::resolved_c(std::int64_t n) const {
  if (c > 0.0) return c;
  return solve_zipf_constant(n);
}

std::int64_t reservoir_capacity(std::int64_t n, const DetectionParams& params) {
  if (n < 4) throw std::invalid_argument("reservoir_capacity: n must be >= 4");
  const double nd = static_cast<double>(n);
  const double k = params.resolved_c(n) * params.resolved_alpha() * std::sqrt(nd) * std::log(nd) / 4.0;
  return static_cast<std::int64_t>(std::ceil(k));
}

std::int64_t effective_capacity(std::int64_t n, const DetectionParams& params) {
  if (params.k_override) return *params.k_override;
  return reservoir_capacity(n, params);
}

std::int64_t detection_threshold(std::int64_t n, double coeff) {
  if (n < 2) throw std::invalid_argument("detection_threshold: n must be >= 2");
  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  return static_cast<std::int64_t>(std::ceil(coeff * std::pow(nd, 0.125) * log_n * log_n));
}

std::int64_t effective_threshold(std::int64_t n, const DetectionParams& params) {
  if (params.threshold_override) return *params.threshold_override;
  return detection_threshold(n, params.threshold_coeff);
}

DetectionVerdict detect_static(const Reservoir& r, std::int64_t n, const DetectionParams& params) {
  const std::vector<Edge> edges = r.edge_set();
  const ComponentSummary summary = connected_components(edges);
  DetectionVerdict verdict;
  verdict.largest_size = summary.largest_size();
  verdict.threshold = effective_threshold(n, params);
  verdict.accept = verdict.largest_size >= verdict.threshold;
  return verdict;
}

namespace {

// 2-core of the largest component of an edge set, empty optional when the
// component is below the threshold.
std::optional<std::vector<NodeId>> core_of_largest(std::span<const Edge> edges,
                                                   std::int64_t threshold) {
  const ComponentSummary summary = connected_components(edges);
  if (summary.largest_size() < threshold) return std::nullopt;
  const std::vector<NodeId>& component = summary.largest();
  std::unordered_set<NodeId> members(component.begin(), component.end());
  std::vector<Edge> internal;
  for (const auto& e : edges)
    if (members.count(e.first) && members.count(e.second)) internal.push_back(e);
  return two_core(component, internal);
}

}  // namespace

std::optional<std::vector<NodeId>> reconstruct_static(const Reservoir& r, std::int64_t n,
                                                      const DetectionParams& params) {
  return core_of_largest(r.edge_set(), effective_threshold(n, params));
}

DetectionVerdict detect_dynamic(const WindowedStream& windows, std::int64_t n,
                                const DetectionParams& params) {
  const std::vector<std::int64_t> bounds(windows.windows.size(), n);
  return detect_dynamic(windows, bounds, params);
}

DetectionVerdict detect_dynamic(const WindowedStream& windows,
                                std::span<const std::int64_t> n_per_window,
                                const DetectionParams& params) {
  if (n_per_window.size() != windows.windows.size())
    throw std::invalid_argument("detect_dynamic: one node bound per window required");
  DetectionVerdict verdict;
  for (std::size_t i = 0; i < windows.windows.size(); ++i) {
    const auto& w = windows.windows[i];
    const ComponentSummary summary = connected_components(w.reservoir.edge_set());
    const std::int64_t size = summary.largest_size();
    const std::int64_t threshold = effective_threshold(n_per_window[i], params);
    if (size >= threshold) {
      verdict.accept = true;
      verdict.largest_size = size;
      verdict.threshold = threshold;
      verdict.window_index = w.index;
      return verdict;
    }
    if (size > verdict.largest_size) verdict.largest_size = size;
    verdict.threshold = threshold;
  }
  return verdict;
}

EstimationConfig EstimationConfig::from(double epsilon_tol, double rho) {
  if (epsilon_tol <= 0.0 || epsilon_tol >= 1.0)
    throw std::invalid_argument("EstimationConfig: epsilon_tol must be in (0, 1)");
  if (rho <= 0.0 || rho >= 1.0) throw std::invalid_argument("EstimationConfig: rho must be in (0, 1)");
  EstimationConfig cfg;
  cfg.epsilon_tol = epsilon_tol;
  cfg.rho = rho;
  cfg.windows_required =
      static_cast<std::int64_t>(std::ceil(std::log(epsilon_tol) / std::log(rho) - 1e-12));
  cfg.windows_required = std::max<std::int64_t>(cfg.windows_required, 1);
  return cfg;
}

DynamicEstimate estimate_dynamic(const WindowedStream& windows, std::int64_t n,
                                 const DetectionParams& params, const EstimationConfig& est) {
  const std::int64_t threshold = effective_threshold(n, params);
  const std::int64_t spacing = windows.cfg.spacing();

  DynamicEstimate result;
  std::set<NodeId> pool;
  std::int64_t last_taken = std::numeric_limits<std::int64_t>::min() / 2;
  for (const auto& w : windows.windows) {
    if (static_cast<std::int64_t>(result.window_indices.size()) >= est.windows_required) break;
    if (w.index - last_taken < spacing) continue;
    const std::vector<Edge> edges = w.reservoir.edge_set();
    const auto core = core_of_largest(edges, threshold);
    if (!core) continue;
    pool.insert(core->begin(), core->end());
    result.window_indices.push_back(w.index);
    last_taken = w.index;
  }
  result.nodes.assign(pool.begin(), pool.end());
  result.insufficient_windows =
      static_cast<std::int64_t>(result.window_indices.size()) < est.windows_required;
  return result;
}

ApproxScore approximation_metrics(std::span<const NodeId> s_hat, const GroundTruth& truth) {
  const std::set<NodeId> hat(s_hat.begin(), s_hat.end());
  const std::set<NodeId> s(truth.s.begin(), truth.s.end());
  std::int64_t hit = 0;
  for (const auto u : hat)
    if (s.count(u)) ++hit;

  ApproxScore score;
  score.missed = static_cast<std::int64_t>(s.size()) - hit;
  score.spurious = static_cast<std::int64_t>(hat.size()) - hit;
  if (!hat.empty()) score.precision = static_cast<double>(hit) / static_cast<double>(hat.size());
  if (!s.empty()) score.recall = static_cast<double>(hit) / static_cast<double>(s.size());
  return score;
}

}  // namespace densestream
