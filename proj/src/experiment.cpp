#include "densestream/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "densestream/dynamics.hpp"
#include "densestream/er_core.hpp"
#include "densestream/sketch.hpp"
#include "densestream/stream.hpp"

namespace densestream {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DENSESTREAM_SEED")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return static_cast<std::uint64_t>(value);
  }
  return 12345;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return from_stream(in);
}

ExperimentConfig ExperimentConfig::from_stream(std::istream& in) {
  ExperimentConfig cfg;
  cfg.seed = default_seed();
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) throw ParseError("config: expected 'key = value'", line_no);
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) throw ParseError("config: empty key or value", line_no);

    try {
      if (key == "scenario") cfg.scenario = value;
      else if (key == "n") cfg.n = std::stoll(value);
      else if (key == "trials") cfg.trials = std::stoll(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "gamma") cfg.gamma = std::stod(value);
      else if (key == "delta") cfg.delta = std::stod(value);
      else if (key == "epsilon") cfg.epsilon = std::stod(value);
      else if (key == "alpha") cfg.alpha = std::stod(value);
      else if (key == "c") cfg.c = std::stod(value);
      else if (key == "threshold_coeff") cfg.threshold_coeff = std::stod(value);
      else if (key == "k") cfg.k = std::stoll(value);
      else if (key == "c1") cfg.c1 = std::stod(value);
      else if (key == "tau") cfg.tau = std::stoll(value);
      else if (key == "lambda") cfg.lambda = std::stoll(value);
      else if (key == "q") cfg.q = std::stoll(value);
      else if (key == "warm_steps") cfg.warm_steps = std::stoll(value);
      else if (key == "dense_steps") cfg.dense_steps = std::stoll(value);
      else if (key == "cool_steps") cfg.cool_steps = std::stoll(value);
      else if (key == "eps_tol") cfg.eps_tol = std::stod(value);
      else if (key == "rho") cfg.rho = std::stod(value);
      else if (key == "output") cfg.output = value;
      else throw ParseError("config: unknown key '" + key + "'", line_no);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("config: bad value for '" + key + "'", line_no);
    }
  }
  return cfg;
}

void ExperimentConfig::validate() const {
  if (scenario != "uniform" && scenario != "concentrated" && scenario != "er-core" &&
      scenario != "step-dynamics")
    throw std::invalid_argument("experiment: unknown scenario '" + scenario + "'");
  if (trials < 0) throw std::invalid_argument("experiment: negative trials");
  if (n < 4) throw std::invalid_argument("experiment: n must be >= 4");
  if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("experiment: gamma in (0, 1]");
  if (delta <= 0.0) throw std::invalid_argument("experiment: delta must be positive");
  if (scenario == "er-core" && !(c1 > 1.0 + 1e-6))
    throw std::invalid_argument("experiment: er-core needs c1 > 1");
  if (scenario == "step-dynamics") {
    WindowConfig wcfg{tau, lambda};
    wcfg.validate();
    if (q < 1) throw std::invalid_argument("experiment: q must be >= 1");
    if (warm_steps < 0 || dense_steps < 0 || cool_steps < 0)
      throw std::invalid_argument("experiment: negative phase length");
    if (eps_tol <= 0.0 || eps_tol >= 1.0 || rho <= 0.0 || rho >= 1.0)
      throw std::invalid_argument("experiment: eps_tol and rho must be in (0, 1)");
  }
}

ojson ExperimentConfig::to_json() const {
  ojson j;
  j["scenario"] = scenario;
  j["n"] = n;
  j["trials"] = trials;
  j["seed"] = seed;
  j["gamma"] = gamma;
  j["delta"] = delta;
  j["epsilon"] = epsilon;
  j["alpha"] = alpha;
  j["c"] = c;
  j["threshold_coeff"] = threshold_coeff;
  j["k"] = k;
  if (scenario == "er-core") j["c1"] = c1;
  if (scenario == "step-dynamics") {
    j["tau"] = tau;
    j["lambda"] = lambda;
    j["q"] = q;
    j["warm_steps"] = warm_steps;
    j["dense_steps"] = dense_steps;
    j["cool_steps"] = cool_steps;
    j["eps_tol"] = eps_tol;
    j["rho"] = rho;
  }
  return j;
}

double stream_budget_c(std::int64_t n, std::int64_t m) {
  return 4.0 * static_cast<double>(m) / (static_cast<double>(n) * std::log(static_cast<double>(n)));
}

DegreeSequence planted_sequence(std::int64_t n, double delta) {
  DegreeSequence seq = zipf_sequence(n);
  const double dsn = delta * std::sqrt(static_cast<double>(n));
  const auto s_size = static_cast<std::int64_t>(dsn);
  if (s_size < 2) throw std::invalid_argument("planted_sequence: planted set smaller than 2");
  const auto need_degree = static_cast<std::int64_t>(std::ceil(dsn));
  std::int64_t available = 0;
  for (auto it = seq.counts.lower_bound(need_degree); it != seq.counts.end(); ++it)
    available += it->second;
  if (available < s_size) seq = zipf_sequence_with_floor(n, s_size, need_degree);
  return seq;
}

PlantedInstance planted_instance(std::int64_t n, double gamma, double delta, std::uint64_t seed) {
  PlantedInstance inst;
  inst.seq = planted_sequence(n, delta);
  inst.m_sequence = inst.seq.degree_sum() / 2;
  auto [graph, truth] = concentrated_model(inst.seq, gamma, delta, seed);
  inst.graph = std::move(graph);
  inst.truth = std::move(truth);
  return inst;
}

ojson aggregate_rows(const std::vector<ojson>& rows) {
  ojson agg = ojson::object();
  const ojson* first = nullptr;
  for (const auto& row : rows) {
    if (!row.contains("error")) {
      first = &row;
      break;
    }
  }
  if (!first) return agg;

  for (const auto& [key, value] : first->items()) {
    if (key == "trial" || key == "seed") continue;
    if (value.is_boolean()) {
      std::int64_t count = 0, hits = 0;
      for (const auto& row : rows) {
        if (!row.contains(key) || !row[key].is_boolean()) continue;
        ++count;
        if (row[key].get<bool>()) ++hits;
      }
      ojson cell;
      cell["rate"] = count > 0 ? static_cast<double>(hits) / static_cast<double>(count) : 0.0;
      cell["count"] = count;
      agg[key] = cell;
    } else if (value.is_number()) {
      std::vector<double> xs;
      for (const auto& row : rows) {
        if (!row.contains(key) || !row[key].is_number()) continue;
        xs.push_back(row[key].get<double>());
      }
      const auto count = static_cast<std::int64_t>(xs.size());
      double mean = 0.0;
      for (const double x : xs) mean += x;
      if (count > 0) mean /= static_cast<double>(count);
      double var = 0.0;
      for (const double x : xs) var += (x - mean) * (x - mean);
      const double sd = count > 1 ? std::sqrt(var / static_cast<double>(count - 1)) : 0.0;
      ojson cell;
      cell["mean"] = mean;
      cell["std"] = sd;
      cell["ci95"] = count > 0 ? 1.96 * sd / std::sqrt(static_cast<double>(count)) : 0.0;
      cell["count"] = count;
      agg[key] = cell;
    }
  }
  return agg;
}

namespace {

ojson optional_number(const std::optional<double>& value) {
  if (value) return *value;
  return nullptr;
}

void run_uniform(const ExperimentConfig& cfg, ReportRecord& report) {
  const DegreeSequence seq = zipf_sequence(cfg.n);
  DetectionParams params;
  params.gamma = cfg.gamma;
  params.delta = cfg.delta;
  params.epsilon = cfg.epsilon;
  params.alpha = cfg.alpha;
  params.c = cfg.c;
  params.threshold_coeff = cfg.threshold_coeff;
  if (cfg.k > 0) params.k_override = cfg.k;
  const std::int64_t k = effective_capacity(cfg.n, params);
  const std::int64_t threshold = effective_threshold(cfg.n, params);
  report.meta["k"] = k;
  report.meta["threshold"] = threshold;
  report.meta["sequence_m"] = seq.degree_sum() / 2;

  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(trial);
    try {
      const MultiGraph g = configuration_model(seq, false, trial_seed);
      const std::vector<TimestampedEdge> stream =
          stream_from_graph(g, StreamOrder::Shuffled, trial_seed);
      Reservoir r(k);
      CounterRng rng(trial_seed, rng_stream::kReservoir);
      for (const auto& e : stream) r.offer(e, rng);

      const DetectionVerdict verdict = detect_static(r, cfg.n, params);
      const ReservoirDegreeStats stats = reservoir_degree_stats(r.edge_set());

      ojson row;
      row["trial"] = trial;
      row["seed"] = trial_seed;
      row["k"] = k;
      row["seen"] = r.seen();
      row["largest"] = verdict.largest_size;
      row["threshold"] = verdict.threshold;
      row["accept"] = verdict.accept;
      row["n_r"] = stats.n_r;
      row["x1_ratio"] = stats.x1_ratio;
      row["q_stat"] = stats.q_stat;
      row["i_star"] = stats.i_star;
      report.rows.push_back(std::move(row));
    } catch (const std::exception& ex) {
      ojson row;
      row["trial"] = trial;
      row["seed"] = trial_seed;
      row["error"] = ex.what();
      report.rows.push_back(std::move(row));
      report.any_trial_errored = true;
    }
  }
}

void run_concentrated(const ExperimentConfig& cfg, ReportRecord& report) {
  const DegreeSequence seq = planted_sequence(cfg.n, cfg.delta);
  const std::int64_t m_seq = seq.degree_sum() / 2;
  DetectionParams params;
  params.gamma = cfg.gamma;
  params.delta = cfg.delta;
  params.epsilon = cfg.epsilon;
  params.alpha = cfg.alpha;
  params.c = cfg.c;
  params.threshold_coeff = cfg.threshold_coeff;
  if (params.c <= 0.0) params.c = stream_budget_c(cfg.n, m_seq);
  if (cfg.k > 0) params.k_override = cfg.k;
  const std::int64_t k = effective_capacity(cfg.n, params);
  const std::int64_t threshold = effective_threshold(cfg.n, params);
  report.meta["k"] = k;
  report.meta["threshold"] = threshold;
  report.meta["sequence_m"] = m_seq;
  report.meta["calibrated_c"] = params.c;

  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(trial);
    try {
      auto [g, truth] = concentrated_model(seq, cfg.gamma, cfg.delta, trial_seed);
      const std::vector<TimestampedEdge> stream =
          stream_from_graph(g, StreamOrder::Shuffled, trial_seed);
      Reservoir r(k);
      CounterRng rng(trial_seed, rng_stream::kReservoir);
      for (const auto& e : stream) r.offer(e, rng);

      const DetectionVerdict verdict = detect_static(r, cfg.n, params);
      const auto core = reconstruct_static(r, cfg.n, params);
      const std::vector<NodeId> s_hat = core ? *core : std::vector<NodeId>{};
      const ApproxScore score = approximation_metrics(s_hat, truth);

      ojson row;
      row["trial"] = trial;
      row["seed"] = trial_seed;
      row["k"] = k;
      row["seen"] = r.seen();
      row["stream_m"] = static_cast<std::int64_t>(stream.size());
      row["largest"] = verdict.largest_size;
      row["threshold"] = verdict.threshold;
      row["accept"] = verdict.accept;
      row["core_size"] = static_cast<std::int64_t>(s_hat.size());
      row["recall"] = optional_number(score.recall);
      row["precision"] = optional_number(score.precision);
      row["missed"] = score.missed;
      row["spurious"] = score.spurious;
      row["spurious_frac"] =
          static_cast<double>(score.spurious) / static_cast<double>(truth.s.size());
      row["density"] = gamma_density(g, truth.s);
      report.rows.push_back(std::move(row));
    } catch (const std::exception& ex) {
      ojson row;
      row["trial"] = trial;
      row["seed"] = trial_seed;
      row["error"] = ex.what();
      report.rows.push_back(std::move(row));
      report.any_trial_errored = true;
    }
  }
}

void run_er_core(const ExperimentConfig& cfg, ReportRecord& report) {
  const ErCoreSolution sol = solve_er_core(cfg.c1);
  report.meta["b"] = sol.b;
  report.meta["t"] = sol.t;
  report.meta["core_b"] = sol.core_fraction();

  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(trial);
    try {
      const MultiGraph g = erdos_renyi(cfg.n, cfg.c1 / static_cast<double>(cfg.n), trial_seed);
      const ComponentSummary summary = connected_components(g.edges);
      const std::vector<NodeId>& largest = summary.largest();
      std::vector<Edge> internal;
      {
        std::unordered_set<NodeId> members(largest.begin(), largest.end());
        for (const auto& e : g.edges)
          if (members.count(e.first) && members.count(e.second)) internal.push_back(e);
      }
      const std::vector<NodeId> core = two_core(largest, internal);

      ojson row;
      row["trial"] = trial;
      row["seed"] = trial_seed;
      row["m"] = static_cast<std::int64_t>(g.edges.size());
      row["largest_frac"] =
          static_cast<double>(largest.size()) / static_cast<double>(cfg.n);
      row["core_frac"] = static_cast<double>(core.size()) / static_cast<double>(cfg.n);
      report.rows.push_back(std::move(row));
    } catch (const std::exception& ex) {
      ojson row;
      row["trial"] = trial;
      row["seed"] = trial_seed;
      row["error"] = ex.what();
      report.rows.push_back(std::move(row));
      report.any_trial_errored = true;
    }
  }
}

void run_step_dynamics(const ExperimentConfig& cfg, ReportRecord& report) {
  const DegreeSequence seq = planted_sequence(cfg.n, cfg.delta);
  const auto s_size = static_cast<std::int64_t>(cfg.delta * std::sqrt(static_cast<double>(cfg.n)));
  GroundTruth truth;
  truth.gamma = cfg.gamma;
  truth.delta = cfg.delta;
  for (NodeId u = 0; u < s_size; ++u) truth.s.push_back(u);

  DetectionParams params;
  params.gamma = cfg.gamma;
  params.delta = cfg.delta;
  params.epsilon = cfg.epsilon;
  params.alpha = cfg.alpha;
  params.c = cfg.c;
  params.threshold_coeff = cfg.threshold_coeff;
  // Per-window budget is q*tau added edges; calibrate the capacity to it.
  if (params.c <= 0.0) params.c = stream_budget_c(cfg.n, cfg.q * cfg.tau);
  if (cfg.k > 0) params.k_override = cfg.k;
  const std::int64_t k = effective_capacity(cfg.n, params);
  const std::int64_t threshold = effective_threshold(cfg.n, params);
  const WindowConfig wcfg{cfg.tau, cfg.lambda};
  const EstimationConfig est = EstimationConfig::from(cfg.eps_tol, cfg.rho);
  EstimationConfig single = est;
  single.windows_required = 1;

  report.meta["k"] = k;
  report.meta["threshold"] = threshold;
  report.meta["s_size"] = s_size;
  report.meta["windows_required"] = est.windows_required;

  DynamicsConfig dyn;
  dyn.q = cfg.q;
  dyn.gamma = cfg.gamma;
  dyn.s = truth.s;
  dyn.keep_step_logs = false;
  dyn.schedule = {{DynamicsMode::Uniform, cfg.warm_steps},
                  {DynamicsMode::Concentrated, cfg.dense_steps},
                  {DynamicsMode::Uniform, cfg.cool_steps}};

  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(trial);
    try {
      const MultiGraph g0 = configuration_model(seq, false, trial_seed);
      const ScheduleRun run = run_schedule(g0, dyn, trial_seed);
      const WindowedStream windows = window_reservoirs(run.stream, wcfg, k, trial_seed);

      const DetectionVerdict verdict = detect_dynamic(windows, cfg.n, params);
      const DynamicEstimate est_union = estimate_dynamic(windows, cfg.n, params, est);
      const DynamicEstimate est_single = estimate_dynamic(windows, cfg.n, params, single);
      const ApproxScore score_union = approximation_metrics(est_union.nodes, truth);
      const ApproxScore score_single = approximation_metrics(est_single.nodes, truth);

      const double recall_union = score_union.recall.value_or(0.0);
      const double recall_single =
          est_single.window_indices.empty() ? 0.0 : score_single.recall.value_or(0.0);

      ojson row;
      row["trial"] = trial;
      row["seed"] = trial_seed;
      row["k"] = k;
      row["accept"] = verdict.accept;
      row["accept_window"] =
          verdict.window_index ? ojson(*verdict.window_index) : ojson(nullptr);
      row["windows_total"] = static_cast<std::int64_t>(windows.windows.size());
      row["windows_used"] = static_cast<std::int64_t>(est_union.window_indices.size());
      row["insufficient"] = est_union.insufficient_windows;
      row["recall_union"] = recall_union;
      row["recall_single"] = recall_single;
      row["improved"] = !est_single.window_indices.empty() && recall_union > recall_single;
      row["missed"] = score_union.missed;
      row["spurious"] = score_union.spurious;
      report.rows.push_back(std::move(row));
    } catch (const std::exception& ex) {
      ojson row;
      row["trial"] = trial;
      row["seed"] = trial_seed;
      row["error"] = ex.what();
      report.rows.push_back(std::move(row));
      report.any_trial_errored = true;
    }
  }
}

}  // namespace

ReportRecord run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ReportRecord report;
  report.meta["config"] = cfg.to_json();

  try {
    if (cfg.scenario == "uniform") run_uniform(cfg, report);
    else if (cfg.scenario == "concentrated") run_concentrated(cfg, report);
    else if (cfg.scenario == "er-core") run_er_core(cfg, report);
    else run_step_dynamics(cfg, report);
  } catch (const std::exception& ex) {
    // A scenario-level failure is recorded on the row that caused it.
    ojson row;
    row["trial"] = static_cast<std::int64_t>(report.rows.size());
    row["error"] = ex.what();
    report.rows.push_back(std::move(row));
    report.any_trial_errored = true;
  }

  report.aggregates = aggregate_rows(report.rows);
  if (!cfg.output.empty()) write_report(report, cfg.output);
  return report;
}

ojson ReportRecord::to_json() const {
  ojson j;
  j["meta"] = meta;
  j["rows"] = rows;
  j["aggregates"] = aggregates;
  return j;
}

std::string ReportRecord::to_csv() const {
  const ojson* first = nullptr;
  for (const auto& row : rows) {
    if (!row.contains("error")) {
      first = &row;
      break;
    }
  }
  if (!first) return "";

  std::ostringstream out;
  bool head = true;
  for (const auto& [key, value] : first->items()) {
    if (!head) out << ',';
    head = false;
    out << key;
  }
  out << '\n';
  for (const auto& row : rows) {
    bool lead = true;
    for (const auto& [key, value] : first->items()) {
      if (!lead) out << ',';
      lead = false;
      if (!row.contains(key) || row[key].is_null()) continue;
      out << row[key].dump();
    }
    out << '\n';
  }
  return out.str();
}

void write_report(const ReportRecord& report, const std::string& prefix) {
  const std::filesystem::path parent = std::filesystem::path(prefix).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  {
    std::ofstream out(prefix + ".json");
    if (!out) throw std::runtime_error("cannot write report: " + prefix + ".json");
    out << report.to_json().dump(2) << '\n';
  }
  {
    std::ofstream out(prefix + ".csv");
    if (!out) throw std::runtime_error("cannot write report: " + prefix + ".csv");
    out << report.to_csv();
  }
}

}  // namespace densestream
