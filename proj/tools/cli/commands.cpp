#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "graphmark/envelopes.hpp"
#include "graphmark/error.hpp"
#include "graphmark/graph_io.hpp"
#include "graphmark/metrics.hpp"
#include "graphmark/parallel.hpp"
#include "graphmark/pattern_io.hpp"
#include "graphmark/simulate.hpp"
#include "output.hpp"

namespace graphmark::cli {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct AnalysisFlags {
  std::string pattern;
  std::string config;
  std::string out;
  std::string window;
  std::optional<int> threads;
  std::optional<std::string> metric;
  std::optional<std::string> test_function;
  std::optional<std::string> bandwidth;
  std::optional<std::string> kernel;
  std::optional<std::string> edge_correction;
  std::optional<std::string> statistic;
  std::optional<std::size_t> s;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void add_analysis_flags(CLI::App* cmd, AnalysisFlags& f) {
  cmd->add_option("pattern", f.pattern, "Pattern file (JSON, or CSV with --window)")->required();
  cmd->add_option("--config", f.config, "Analysis config (TOML or JSON)");
  cmd->add_option("--out", f.out, "Output CSV path")->required();
  cmd->add_option("--window", f.window, "xmin,xmax,ymin,ymax for CSV patterns");
  cmd->add_option("--threads", f.threads, "Worker threads");
  cmd->add_option("--metric", f.metric, "Graph metric kind");
  cmd->add_option("--test-function", f.test_function, "Test function kind");
  cmd->add_option("--bandwidth", f.bandwidth, "Kernel bandwidth or 'auto'");
  cmd->add_option("--kernel", f.kernel, "epanechnikov, box or gaussian");
  cmd->add_option("--edge-correction", f.edge_correction, "translation or none");
  cmd->add_option("--statistic", f.statistic, "mark_correlation, K or C");
}

AnalysisConfig analysis_config(const AnalysisFlags& f) {
  nlohmann::json j = f.config.empty() ? nlohmann::json::object() : read_config_file(f.config);
  // Command-line flags override the file.
  auto& tf = j["test_function"];
  if (tf.is_null()) tf = nlohmann::json::object();
  if (!tf.is_object()) throw ConfigError("field 'test_function' must be a table");
  if (f.metric) {
    auto& m = tf["metric"];
    if (m.is_object()) {
      m["kind"] = *f.metric;
    } else {
      m = *f.metric;
    }
  }
  if (f.test_function) tf["kind"] = *f.test_function;
  auto& est = j["estimation"];
  if (est.is_null()) est = nlohmann::json::object();
  if (!est.is_object()) throw ConfigError("field 'estimation' must be a table");
  if (f.bandwidth) {
    if (*f.bandwidth == "auto") {
      est["bandwidth"] = "auto";
    } else {
      try {
        std::size_t used = 0;
        const double b = std::stod(*f.bandwidth, &used);
        if (used != f.bandwidth->size()) throw std::invalid_argument("trailing");
        est["bandwidth"] = b;
      } catch (const std::exception&) {
        throw ConfigError("--bandwidth must be a number or 'auto'");
      }
    }
  }
  if (f.kernel) est["kernel"] = *f.kernel;
  if (f.edge_correction) est["edge_correction"] = *f.edge_correction;
  if (f.statistic) j["statistic"] = *f.statistic;
  auto& env = j["envelope"];
  if (env.is_null()) env = nlohmann::json::object();
  if (!env.is_object()) throw ConfigError("field 'envelope' must be a table");
  if (f.s) env["s"] = *f.s;
  if (f.alpha) env["alpha"] = *f.alpha;
  if (f.seed) env["seed"] = *f.seed;
  return parse_analysis_config(j);
}

MarkedPointPattern load_any_pattern(const AnalysisFlags& f) {
  const fs::path path(f.pattern);
  if (path.extension() != ".csv") return load_pattern(path);
  if (f.window.empty()) throw ConfigError("CSV patterns need --window xmin,xmax,ymin,ymax");
  double v[4];
  char tail = 0;
  if (std::sscanf(f.window.c_str(), "%lf,%lf,%lf,%lf%c", &v[0], &v[1], &v[2], &v[3], &tail) != 4) {
    throw ConfigError("--window must be xmin,xmax,ymin,ymax");
  }
  if (!(v[1] > v[0]) || !(v[3] > v[2])) throw ConfigError("--window needs xmax > xmin, ymax > ymin");
  return load_pattern_csv(path, Window(v[0], v[1], v[2], v[3]));
}

int cmd_simulate(const std::string& config, const std::string& out, std::optional<std::uint64_t> seed,
                 std::optional<std::size_t> fixed_n, std::optional<int> threads) {
  const auto t0 = Clock::now();
  nlohmann::json j = read_config_file(config);
  if (seed) j["seed"] = *seed;
  if (fixed_n) {
    auto& g = j["ground"];
    if (g.is_null()) g = nlohmann::json::object();
    if (!g.is_object()) throw ConfigError("field 'ground' must be a table");
    if (g.contains("kind") && g["kind"] != "poisson") {
      throw ConfigError("--fixed-n applies to the poisson ground process only");
    }
    g["fixed_n"] = *fixed_n;
  }
  const SimulationConfig cfg = parse_simulation_config(j);
  const MarkedPointPattern p = simulate_pattern(cfg);
  write_file(out, serialize_pattern(p));
  Manifest m{"simulate", to_json(cfg), cfg.seed, {config}, {out}, resolve_threads(threads),
             seconds_since(t0)};
  write_manifest(m, out);
  return kExitOk;
}

int cmd_summarize(const AnalysisFlags& f) {
  const auto t0 = Clock::now();
  AnalysisConfig cfg = analysis_config(f);
  const MarkedPointPattern p = load_any_pattern(f);
  const int threads = resolve_threads(f.threads);
  cfg.estimation.r_grid = resolve_grid(cfg, p.window());
  SummaryCurve curve;
  switch (cfg.statistic) {
    case EnvelopeStatistic::mark_correlation:
      curve = summary_curve(p, cfg.test_function, cfg.estimation, threads);
      break;
    case EnvelopeStatistic::weighted_k:
      curve = graph_weighted_K(p, cfg.test_function, cfg.estimation, true, threads);
      break;
    case EnvelopeStatistic::weighted_c:
      curve = graph_weighted_K(p, cfg.test_function, cfg.estimation, false, threads);
      break;
  }
  write_file(f.out, curve_csv(curve));
  auto resolved = to_json(cfg);
  resolved["estimation"]["bandwidth_used"] = curve.bandwidth;
  Manifest m{"summarize", resolved, 0, {f.pattern}, {f.out}, threads, 0.0};
  if (!f.config.empty()) m.inputs.push_back(f.config);
  m.wall_seconds = seconds_since(t0);
  write_manifest(m, f.out);
  return kExitOk;
}

int cmd_envelope(const AnalysisFlags& f) {
  const auto t0 = Clock::now();
  AnalysisConfig cfg = analysis_config(f);
  const fs::path out(f.out);
  fs::path json_out = out;
  json_out.replace_extension(".json");
  if (json_out == out) throw ConfigError("--out must not end in .json (the result JSON goes there)");
  const MarkedPointPattern p = load_any_pattern(f);
  const int threads = resolve_threads(f.threads);
  cfg.estimation.r_grid = resolve_grid(cfg, p.window());
  const PipelineResult res = envelope_pipeline(p, cfg.test_function, cfg.estimation, cfg.s,
                                               cfg.alpha, cfg.seed, threads, cfg.statistic);
  write_file(out, envelope_csv(res.curve.statistic, res.envelope));
  write_file(json_out, envelope_result_json(res.envelope).dump(2) + "\n");
  auto resolved = to_json(cfg);
  resolved["estimation"]["bandwidth_used"] = res.curve.bandwidth;
  Manifest m{"envelope", resolved, cfg.seed, {f.pattern}, {out.string(), json_out.string()},
             threads, 0.0};
  if (!f.config.empty()) m.inputs.push_back(f.config);
  m.wall_seconds = seconds_since(t0);
  write_manifest(m, out);
  return kExitOk;
}

int cmd_plot(const std::string& input, const std::string& out) {
  const auto t0 = Clock::now();
  const PlotData d = parse_plot_csv(read_file(input));
  write_file(out, render_svg(d));
  Manifest m{"plot", nlohmann::ordered_json::object(), 0, {input}, {out}, 1, seconds_since(t0)};
  write_manifest(m, out);
  return kExitOk;
}

int cmd_graph_dist(const std::string& g1, const std::string& g2, const std::string& config,
                   const std::optional<std::string>& metric, const std::string& out,
                   std::optional<int> threads) {
  const auto t0 = Clock::now();
  MetricSpec spec;
  if (!config.empty()) {
    const nlohmann::json j = read_config_file(config);
    for (const auto& [k, v] : j.items()) {
      if (k != "metric") throw ConfigError("unknown field '" + k + "'");
    }
    if (j.contains("metric")) spec = parse_metric_spec(j["metric"], "metric");
  }
  if (metric) {
    auto kind = parse_metric_kind(*metric);
    if (!kind) throw ConfigError("--metric has unknown value '" + *metric + "'");
    spec.kind = *kind;
  }
  const GraphMark a = load_graph(g1);
  const GraphMark b = load_graph(g2);
  const double d = graph_distance(a, b, spec);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g\n", d);
  std::fputs(buf, stdout);
  if (!out.empty()) {
    write_file(out, buf);
    Manifest m{"graph-dist", to_json(spec), 0, {g1, g2}, {out}, resolve_threads(threads),
               seconds_since(t0)};
    if (!config.empty()) m.inputs.push_back(config);
    write_manifest(m, out);
  }
  return kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Second-order analysis of point patterns with graph-valued marks", "graphmark"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GRAPHMARK_VERSION);

  std::string sim_config, sim_out;
  std::optional<std::uint64_t> sim_seed;
  std::optional<std::size_t> sim_fixed_n;
  std::optional<int> sim_threads;
  auto* sim = app.add_subcommand("simulate", "Simulate a marked point pattern");
  sim->add_option("--config", sim_config, "Simulation config (TOML or JSON)")->required();
  sim->add_option("--out", sim_out, "Pattern JSON output")->required();
  sim->add_option("--seed", sim_seed, "Master seed (overrides the config)");
  sim->add_option("--fixed-n", sim_fixed_n, "Condition the Poisson count on n points");
  sim->add_option("--threads", sim_threads, "Worker threads");

  AnalysisFlags sum_flags;
  auto* sum = app.add_subcommand("summarize", "Estimate a summary curve");
  add_analysis_flags(sum, sum_flags);

  AnalysisFlags env_flags;
  auto* env = app.add_subcommand("envelope", "Global envelope test under random labelling");
  add_analysis_flags(env, env_flags);
  env->add_option("--s", env_flags.s, "Number of permutations");
  env->add_option("--alpha", env_flags.alpha, "Test level");
  env->add_option("--seed", env_flags.seed, "Permutation seed");

  std::string plot_in, plot_out;
  auto* plot = app.add_subcommand("plot", "Render a curve or envelope CSV as SVG");
  plot->add_option("csv", plot_in, "Curve or envelope CSV")->required();
  plot->add_option("--out", plot_out, "SVG output")->required();

  std::string gd_a, gd_b, gd_config, gd_out;
  std::optional<std::string> gd_metric;
  std::optional<int> gd_threads;
  auto* gd = app.add_subcommand("graph-dist", "Distance between two graph files");
  gd->add_option("graph1", gd_a, "First graph JSON")->required();
  gd->add_option("graph2", gd_b, "Second graph JSON")->required();
  gd->add_option("--metric", gd_metric, "Metric kind (default hamming)");
  gd->add_option("--config", gd_config, "Config with a [metric] table");
  gd->add_option("--out", gd_out, "Also write the value here");
  gd->add_option("--threads", gd_threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sim) return cmd_simulate(sim_config, sim_out, sim_seed, sim_fixed_n, sim_threads);
    if (*sum) return cmd_summarize(sum_flags);
    if (*env) return cmd_envelope(env_flags);
    if (*plot) return cmd_plot(plot_in, plot_out);
    if (*gd) return cmd_graph_dist(gd_a, gd_b, gd_config, gd_metric, gd_out, gd_threads);
  } catch (const ConfigError& e) {
    std::cerr << "graphmark: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "graphmark: " << e.what() << "\n";
    return e.code() == ErrorCode::IoError ? kExitIo : kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "graphmark: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}

}  // namespace graphmark::cli
