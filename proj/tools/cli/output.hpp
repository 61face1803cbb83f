#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "graphmark/envelopes.hpp"
#include "graphmark/estimators.hpp"
#include "json.hpp"

namespace graphmark::cli {

/// %.17g, or the empty string for NaN.
std::string format_real(double v);

/// "# statistic: <name>" line, then r,estimate[,L].
std::string curve_csv(const SummaryCurve& c);
/// r,observed,lo,hi,masked.
std::string envelope_csv(const std::string& statistic, const EnvelopeResult& e);
nlohmann::ordered_json envelope_result_json(const EnvelopeResult& e);

struct PlotData {
  std::string statistic;
  std::vector<double> r;
  std::vector<double> observed;
  std::vector<double> lo;  // empty without a band
  std::vector<double> hi;
};

/// Parses a curve or envelope CSV. Throws ConfigError when malformed.
PlotData parse_plot_csv(const std::string& text);
std::string render_svg(const PlotData& d);

std::string read_file(const std::filesystem::path& path);
/// Writes the bytes or throws Error(IoError).
void write_file(const std::filesystem::path& path, const std::string& bytes);

struct Manifest {
  std::string command;
  nlohmann::ordered_json config;
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  int threads = 1;
  double wall_seconds = 0.0;
};

/// <out>.manifest.json next to the primary output.
std::filesystem::path manifest_path(const std::filesystem::path& out);
void write_manifest(const Manifest& m, const std::filesystem::path& out);

}  // namespace graphmark::cli
