#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "graphmark/envelopes.hpp"
#include "graphmark/estimators.hpp"
#include "graphmark/metrics.hpp"
#include "graphmark/simulate.hpp"
#include "json.hpp"

namespace graphmark::cli {

// Bad configuration or command line (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a TOML or JSON config file (JSON when the extension is .json) into
/// a JSON tree. Syntax errors carry the line number.
nlohmann::json read_config_file(const std::filesystem::path& path);

struct AnalysisConfig {
  EnvelopeStatistic statistic = EnvelopeStatistic::mark_correlation;
  TestFunctionSpec test_function;
  EstimationConfig estimation;
  int grid_points = 64;
  std::optional<double> r_max;
  std::size_t s = 500;
  double alpha = 0.05;
  std::uint64_t seed = 0;
};

SimulationConfig parse_simulation_config(const nlohmann::json& j);
AnalysisConfig parse_analysis_config(const nlohmann::json& j);
MetricSpec parse_metric_spec(const nlohmann::json& j, const std::string& field);

/// Fully resolved configs with every default spelled out.
nlohmann::ordered_json to_json(const SimulationConfig& cfg);
nlohmann::ordered_json to_json(const AnalysisConfig& cfg);
nlohmann::ordered_json to_json(const MetricSpec& spec);

/// r grid after applying r_max / grid_points against a window.
std::vector<double> resolve_grid(const AnalysisConfig& cfg, const Window& w);

/// 64-bit FNV-1a over the compact dump of a JSON value (keys in insertion
/// order, which to_json fixes).
std::string config_digest(const nlohmann::ordered_json& j);

}  // namespace graphmark::cli
