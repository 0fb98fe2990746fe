#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "densestream/degree_model.hpp"
#include "densestream/detector.hpp"
#include "densestream/dynamics.hpp"
#include "densestream/er_core.hpp"
#include "densestream/experiment.hpp"
#include "densestream/graph_gen.hpp"
#include "densestream/oracles.hpp"
#include "densestream/sketch.hpp"
#include "densestream/stream.hpp"

namespace ds = densestream;
using ds::ojson;

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitDetectError = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

struct DetectFlags {
  std::string path;
  std::int64_t n = 0;
  double gamma = 1.0;
  double delta = 1.0;
  double epsilon = 0.1;
  double alpha = 0.0;
  double c = 0.0;
  double threshold_coeff = 1.0;
  std::int64_t k = 0;
  std::uint64_t seed = ds::default_seed();
};

void add_detect_flags(CLI::App* cmd, DetectFlags& flags) {
  cmd->add_option("file", flags.path, "edge file (u v [ts] per line)")->required();
  cmd->add_option("--n", flags.n, "node count of the streamed graph")->required();
  cmd->add_option("--gamma", flags.gamma, "target density in (0,1]");
  cmd->add_option("--delta", flags.delta, "size parameter: |S| > delta*sqrt(n)");
  cmd->add_option("--epsilon", flags.epsilon, "slack in the alpha bound");
  cmd->add_option("--alpha", flags.alpha, "sampling multiplier (0 = derive)");
  cmd->add_option("--c", flags.c, "edge-budget constant (0 = solve for n)");
  cmd->add_option("--threshold-coeff", flags.threshold_coeff, "detection threshold coefficient");
  cmd->add_option("--k", flags.k, "reservoir capacity override (0 = formula)");
  cmd->add_option("--seed", flags.seed, "reservoir sampling seed");
}

ds::DetectionParams params_from(const DetectFlags& flags) {
  ds::DetectionParams params;
  params.gamma = flags.gamma;
  params.delta = flags.delta;
  params.epsilon = flags.epsilon;
  params.alpha = flags.alpha;
  params.c = flags.c;
  params.threshold_coeff = flags.threshold_coeff;
  if (flags.k > 0) params.k_override = flags.k;
  return params;
}

ds::Reservoir fill_reservoir(const DetectFlags& flags, const ds::DetectionParams& params) {
  const ds::ParsedStream stream = ds::parse_edge_file(flags.path);
  ds::Reservoir r(ds::effective_capacity(flags.n, params));
  ds::CounterRng rng(flags.seed, ds::rng_stream::kReservoir);
  for (const auto& e : stream.edges) r.offer(e, rng);
  return r;
}

ojson verdict_json(const ds::DetectionVerdict& verdict) {
  ojson j;
  j["accept"] = verdict.accept;
  j["largest"] = verdict.largest_size;
  j["threshold"] = verdict.threshold;
  if (verdict.window_index) j["window"] = *verdict.window_index;
  return j;
}

int cmd_generate(const std::string& model, std::int64_t n, double gamma, double delta, double p,
                 bool simple, std::uint64_t seed, const std::string& out_path,
                 const std::string& truth_path) {
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return kExitData;
  }
  if (model == "sequence") {
    ds::write_degree_sequence(out, ds::zipf_sequence(n));
    return 0;
  }
  if (model == "uniform") {
    ds::write_edge_list(out, ds::configuration_model(ds::zipf_sequence(n), simple, seed));
    return 0;
  }
  if (model == "concentrated") {
    const ds::PlantedInstance inst = ds::planted_instance(n, gamma, delta, seed);
    ds::write_edge_list(out, inst.graph);
    if (!truth_path.empty()) {
      std::ofstream truth(truth_path);
      if (!truth) {
        std::cerr << "cannot write " << truth_path << "\n";
        return kExitData;
      }
      ds::write_node_set(truth, inst.truth.s);
    }
    return 0;
  }
  if (model == "er") {
    ds::write_edge_list(out, ds::erdos_renyi(n, p, seed));
    return 0;
  }
  std::cerr << "unknown model '" << model << "'\n";
  return kExitUsage;
}

int cmd_stream(const std::string& in_path, const std::string& out_path, const std::string& order,
               std::uint64_t seed) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "cannot read " << in_path << "\n";
    return kExitData;
  }
  const ds::MultiGraph g = ds::read_edge_list(in);
  const auto ordering =
      order == "stored" ? ds::StreamOrder::AsStored : ds::StreamOrder::Shuffled;
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return kExitData;
  }
  out << "# n=" << g.n << '\n';
  ds::write_edge_stream(out, ds::stream_from_graph(g, ordering, seed));
  return 0;
}

int cmd_detect(const DetectFlags& flags) {
  try {
    const ds::DetectionParams params = params_from(flags);
    const ds::Reservoir r = fill_reservoir(flags, params);
    const ds::DetectionVerdict verdict = ds::detect_static(r, flags.n, params);
    ojson j = verdict_json(verdict);
    j["k"] = r.capacity();
    j["seen"] = r.seen();
    std::cout << j.dump(2) << '\n';
    return verdict.accept ? kExitAccept : kExitReject;
  } catch (const std::exception& ex) {
    std::cerr << "detect error: " << ex.what() << "\n";
    return kExitDetectError;
  }
}

int cmd_reconstruct(const DetectFlags& flags, const std::string& truth_path) {
  try {
    const ds::DetectionParams params = params_from(flags);
    const ds::Reservoir r = fill_reservoir(flags, params);
    const ds::DetectionVerdict verdict = ds::detect_static(r, flags.n, params);
    const auto core = ds::reconstruct_static(r, flags.n, params);

    ojson j = verdict_json(verdict);
    if (core)
      j["nodes"] = *core;
    else
      j["nodes"] = nullptr;
    if (!truth_path.empty()) {
      std::ifstream truth_in(truth_path);
      if (!truth_in) throw std::runtime_error("cannot read " + truth_path);
      ds::GroundTruth truth;
      truth.s = ds::read_node_set(truth_in);
      const ds::ApproxScore score =
          ds::approximation_metrics(core ? *core : std::vector<ds::NodeId>{}, truth);
      j["missed"] = score.missed;
      j["spurious"] = score.spurious;
      j["precision"] = score.precision ? ojson(*score.precision) : ojson(nullptr);
      j["recall"] = score.recall ? ojson(*score.recall) : ojson(nullptr);
    }
    std::cout << j.dump(2) << '\n';
    return core ? kExitAccept : kExitReject;
  } catch (const std::exception& ex) {
    std::cerr << "reconstruct error: " << ex.what() << "\n";
    return kExitDetectError;
  }
}

int cmd_stats(const std::string& path, std::int64_t k, std::uint64_t seed) {
  const ds::ParsedStream stream = ds::parse_edge_file(path);
  std::vector<ds::Edge> edges;
  if (k > 0) {
    ds::Reservoir r(k);
    ds::CounterRng rng(seed, ds::rng_stream::kReservoir);
    for (const auto& e : stream.edges) r.offer(e, rng);
    edges = r.edge_set();
  } else {
    edges.reserve(stream.edges.size());
    for (const auto& e : stream.edges) edges.push_back(ds::normalized(e.u, e.v));
  }
  std::cout << ds::stats_to_json(ds::reservoir_degree_stats(edges)) << '\n';
  return 0;
}

int cmd_dynamic(std::int64_t n, double gamma, double delta, std::int64_t q, std::int64_t tau,
                std::int64_t lambda, std::int64_t warm, std::int64_t dense, std::int64_t cool,
                double alpha, double coeff, double eps_tol, double rho, std::uint64_t seed,
                const std::string& stream_out) {
  try {
    ds::ExperimentConfig cfg;
    cfg.scenario = "step-dynamics";
    cfg.n = n;
    cfg.gamma = gamma;
    cfg.delta = delta;
    cfg.q = q;
    cfg.tau = tau;
    cfg.lambda = lambda;
    cfg.warm_steps = warm;
    cfg.dense_steps = dense;
    cfg.cool_steps = cool;
    cfg.alpha = alpha;
    cfg.threshold_coeff = coeff;
    cfg.eps_tol = eps_tol;
    cfg.rho = rho;
    cfg.seed = seed;
    cfg.trials = 1;
    cfg.validate();

    if (!stream_out.empty()) {
      // re-run the schedule itself to dump the annotated stream
      const ds::DegreeSequence seq = ds::planted_sequence(n, delta);
      const auto s_size = static_cast<std::int64_t>(delta * std::sqrt(static_cast<double>(n)));
      ds::DynamicsConfig dyn;
      dyn.q = q;
      dyn.gamma = gamma;
      for (ds::NodeId u = 0; u < s_size; ++u) dyn.s.push_back(u);
      dyn.keep_step_logs = false;
      dyn.schedule = {{ds::DynamicsMode::Uniform, warm},
                      {ds::DynamicsMode::Concentrated, dense},
                      {ds::DynamicsMode::Uniform, cool}};
      const ds::ScheduleRun run =
          ds::run_schedule(ds::configuration_model(seq, false, seed), dyn, seed);
      std::ofstream out(stream_out);
      if (!out) throw std::runtime_error("cannot write " + stream_out);
      out << "# n=" << n << '\n';
      std::size_t cursor = 0;
      // the initial graph dump at tick 0 precedes every phase
      while (cursor < run.stream.size() && run.stream[cursor].ts == 0) {
        const auto& e = run.stream[cursor];
        out << e.u << ' ' << e.v << ' ' << e.ts << '\n';
        ++cursor;
      }
      for (const auto& phase : run.phases) {
        const char* name = phase.mode == ds::DynamicsMode::Uniform ? "uniform" : "concentrated";
        out << "# phase=" << name << " step=" << phase.first_tick << '\n';
        while (cursor < run.stream.size() && run.stream[cursor].ts <= phase.last_tick) {
          const auto& e = run.stream[cursor];
          out << e.u << ' ' << e.v << ' ' << e.ts << '\n';
          ++cursor;
        }
      }
    }

    const ds::ReportRecord report = ds::run_experiment(cfg);
    if (report.any_trial_errored) {
      std::cerr << "dynamic run failed: " << report.rows.at(0).value("error", "unknown") << "\n";
      return kExitDetectError;
    }
    const ojson& row = report.rows.at(0);
    ojson j;
    j["accept"] = row.at("accept");
    j["accept_window"] = row.at("accept_window");
    j["windows_total"] = row.at("windows_total");
    j["recall_union"] = row.at("recall_union");
    j["missed"] = row.at("missed");
    j["spurious"] = row.at("spurious");
    j["insufficient"] = row.at("insufficient");
    std::cout << j.dump(2) << '\n';
    return row.at("accept").get<bool>() ? kExitAccept : kExitReject;
  } catch (const std::exception& ex) {
    std::cerr << "dynamic error: " << ex.what() << "\n";
    return kExitDetectError;
  }
}

int cmd_experiment(const std::string& config_path, const std::string& output_override) {
  ds::ExperimentConfig cfg = ds::ExperimentConfig::from_file(config_path);
  if (!output_override.empty()) cfg.output = output_override;
  const ds::ReportRecord report = ds::run_experiment(cfg);
  std::cout << report.aggregates.dump(2) << '\n';
  if (!cfg.output.empty())
    std::cerr << "report written to " << cfg.output << ".json / .csv\n";
  return report.any_trial_errored ? kExitData : 0;
}

int cmd_oracle() {
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << '\n';
    if (!ok) ++failures;
  };

  {
    const ds::MatchingCensus census = ds::oracle_matchings(std::vector<std::int64_t>{2, 2, 2});
    check(census.total == 15, "6 stubs enumerate to 15 matchings");
    check(census.by_graph.at("0-1,0-2,1-2") == 8, "triangle arises from 8 of 15 matchings");
  }
  {
    ds::CounterRng rng(404);
    bool all_match = true;
    for (int round = 0; round < 200; ++round) {
      std::vector<ds::Edge> edges;
      for (int i = 0; i < 30; ++i) {
        const auto u = static_cast<ds::NodeId>(rng.below(20));
        const auto v = static_cast<ds::NodeId>(rng.below(20));
        edges.push_back(ds::normalized(u, v));
      }
      if (ds::connected_components(edges).components != ds::oracle_components(edges))
        all_match = false;
      std::vector<ds::NodeId> nodes;
      for (const auto& [u, v] : edges) {
        nodes.push_back(u);
        nodes.push_back(v);
      }
      if (ds::two_core(nodes, edges) != ds::oracle_two_core(nodes, edges)) all_match = false;
    }
    check(all_match, "components and 2-core agree with brute force on 200 random graphs");
  }
  {
    const double p01 = ds::chi_square_pvalue(9.21034, 2);
    check(std::abs(p01 - 0.01) < 1e-5, "chi-square tail matches the df=2 closed form");
  }
  {
    const ds::ErCoreSolution sol = ds::solve_er_core(2.0);
    check(std::abs(sol.t * std::exp(-sol.t) - 2.0 * std::exp(-2.0)) < 1e-10,
          "giant-component constants solve their fixed point");
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming detector for large very dense subgraphs"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "write a degree sequence or random graph");
  std::string gen_model = "uniform", gen_out, gen_truth;
  std::int64_t gen_n = 0;
  double gen_gamma = 1.0, gen_delta = 0.3, gen_p = 0.5;
  bool gen_simple = false;
  std::uint64_t gen_seed = ds::default_seed();
  generate->add_option("--model", gen_model, "sequence | uniform | concentrated | er");
  generate->add_option("--n", gen_n, "node count")->required();
  generate->add_option("--gamma", gen_gamma, "planted density (concentrated)");
  generate->add_option("--delta", gen_delta, "planted size parameter (concentrated)");
  generate->add_option("--p", gen_p, "edge probability (er)");
  generate->add_flag("--simple", gen_simple, "rejection-sample a simple graph");
  generate->add_option("--seed", gen_seed, "generation seed");
  generate->add_option("--out", gen_out, "output path")->required();
  generate->add_option("--out-truth", gen_truth, "planted set output path (concentrated)");

  // stream
  auto* stream = app.add_subcommand("stream", "turn a graph file into a timestamped edge stream");
  std::string stream_in, stream_out, stream_order = "shuffled";
  std::uint64_t stream_seed = ds::default_seed();
  stream->add_option("--in", stream_in, "graph edge-list file")->required();
  stream->add_option("--out", stream_out, "edge stream output path")->required();
  stream->add_option("--order", stream_order, "shuffled | stored");
  stream->add_option("--seed", stream_seed, "shuffle seed");

  // detect
  auto* detect = app.add_subcommand("detect", "watch a stream for a large very dense subgraph");
  DetectFlags detect_flags;
  add_detect_flags(detect, detect_flags);

  // reconstruct
  auto* reconstruct = app.add_subcommand("reconstruct", "detect, then output the dense core");
  DetectFlags rec_flags;
  std::string rec_truth;
  add_detect_flags(reconstruct, rec_flags);
  reconstruct->add_option("--truth", rec_truth, "planted set file for scoring");

  // dynamic
  auto* dynamic = app.add_subcommand("dynamic", "run a rewiring schedule with windowed detection");
  std::int64_t dyn_n = 0, dyn_q = 0, dyn_tau = 0, dyn_lambda = 0;
  std::int64_t dyn_warm = 0, dyn_dense = 0, dyn_cool = 0;
  double dyn_gamma = 1.0, dyn_delta = 1.0, dyn_alpha = 0.0, dyn_coeff = 1.0;
  double dyn_eps = 0.01, dyn_rho = 0.1;
  std::uint64_t dyn_seed = ds::default_seed();
  std::string dyn_stream_out;
  dynamic->add_option("--n", dyn_n, "node count")->required();
  dynamic->add_option("--gamma", dyn_gamma, "planted density");
  dynamic->add_option("--delta", dyn_delta, "planted size parameter");
  dynamic->add_option("--q", dyn_q, "edges rewired per step")->required();
  dynamic->add_option("--tau", dyn_tau, "window length in ticks")->required();
  dynamic->add_option("--lambda", dyn_lambda, "window step in ticks")->required();
  dynamic->add_option("--warm", dyn_warm, "uniform steps before the dense phase");
  dynamic->add_option("--dense", dyn_dense, "concentrated steps");
  dynamic->add_option("--cool", dyn_cool, "uniform steps after the dense phase");
  dynamic->add_option("--alpha", dyn_alpha, "sampling multiplier (0 = derive)");
  dynamic->add_option("--threshold-coeff", dyn_coeff, "detection threshold coefficient");
  dynamic->add_option("--eps-tol", dyn_eps, "estimation tolerance");
  dynamic->add_option("--rho", dyn_rho, "assumed single-window miss rate");
  dynamic->add_option("--seed", dyn_seed, "run seed");
  dynamic->add_option("--out-stream", dyn_stream_out, "write the annotated edge stream here");

  // stats
  auto* stats = app.add_subcommand("stats", "degree statistics of a (sampled) edge file");
  std::string stats_path;
  std::int64_t stats_k = 0;
  std::uint64_t stats_seed = ds::default_seed();
  stats->add_option("file", stats_path, "edge file")->required();
  stats->add_option("--k", stats_k, "sample with a reservoir of this capacity first");
  stats->add_option("--seed", stats_seed, "reservoir seed");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run a config-file experiment");
  std::string exp_config, exp_output;
  experiment->add_option("--config", exp_config, "flat key=value config file")->required();
  experiment->add_option("--output", exp_output, "report path prefix override");

  // oracle
  app.add_subcommand("oracle", "run the brute-force self-check suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (generate->parsed())
      return cmd_generate(gen_model, gen_n, gen_gamma, gen_delta, gen_p, gen_simple, gen_seed,
                          gen_out, gen_truth);
    if (stream->parsed()) return cmd_stream(stream_in, stream_out, stream_order, stream_seed);
    if (detect->parsed()) return cmd_detect(detect_flags);
    if (reconstruct->parsed()) return cmd_reconstruct(rec_flags, rec_truth);
    if (dynamic->parsed())
      return cmd_dynamic(dyn_n, dyn_gamma, dyn_delta, dyn_q, dyn_tau, dyn_lambda, dyn_warm,
                         dyn_dense, dyn_cool, dyn_alpha, dyn_coeff, dyn_eps, dyn_rho, dyn_seed,
                         dyn_stream_out);
    if (stats->parsed()) return cmd_stats(stats_path, stats_k, stats_seed);
    if (experiment->parsed()) return cmd_experiment(exp_config, exp_output);
    return cmd_oracle();
  } catch (const ds::ParseError& ex) {
    std::cerr << "data error: " << ex.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "usage error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return kExitInternal;
  }
}
