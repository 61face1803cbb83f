#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "graphmark/estimators.hpp"

namespace graphmark {

/// Row 0 is the observed curve, rows 1..s the permutation curves.
struct CurveEnsemble {
  std::vector<double> grid;
  std::vector<std::vector<double>> curves;
};

/// Grid columns where any curve is NaN; these are left out of the ranking.
std::vector<char> masked_columns(const CurveEnsemble& e);

/// Position of each curve in the extreme rank length ordering: 1 is the most
/// extreme, tied curves share the average of their positions. Pointwise
/// ranks use average ranks among ties and are two-sided,
/// min(rank from below, rank from above).
std::vector<double> erl_measure(const CurveEnsemble& e);

struct EnvelopeResult {
  std::vector<double> r;
  std::vector<double> observed;
  std::vector<double> lo;  // NaN in masked columns
  std::vector<double> hi;
  std::vector<char> masked;
  std::vector<double> erl;       // per curve, row order of the ensemble
  std::vector<double> p_values;  // per curve
  double alpha = 0.05;
  std::size_t s = 0;
  bool rejected = false;
  double erl_rank_observed = 0.0;
  double p_value = 1.0;
};

/// Curves whose ERL p-value (number of curves at least as extreme, over s+1)
/// is at most alpha form the extreme set; the envelope is the pointwise range
/// of the others. Rejects when the observed curve leaves [lo, hi] at some
/// unmasked grid point.
EnvelopeResult global_envelope(const CurveEnsemble& e, double alpha);

enum class EnvelopeStatistic { mark_correlation, weighted_k, weighted_c };

struct PipelineResult {
  SummaryCurve curve;
  EnvelopeResult envelope;
};

/// Observed curve plus s random-labelling curves (permutation k drawn from
/// derive_seed(seed, k)), then the global envelope. The result does not
/// depend on the thread count.
PipelineResult envelope_pipeline(const MarkedPointPattern& p, const TestFunctionSpec& tf,
                                 const EstimationConfig& cfg, std::size_t s, double alpha,
                                 std::uint64_t seed, int threads = 1,
                                 EnvelopeStatistic statistic = EnvelopeStatistic::mark_correlation);

}  // namespace graphmark
