#include "graphmark/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "graphmark/error.hpp"
#include "graphmark/parallel.hpp"
#include "graphmark/rng.hpp"
#include "graphmark/simulate.hpp"

namespace graphmark {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_shape(const CurveEnsemble& e) {
  if (e.curves.size() < 2) {
    throw Error(ErrorCode::DegenerateEnsemble, "ensemble needs the observed and >= 1 permutation");
  }
  for (const auto& c : e.curves) {
    if (c.size() != e.grid.size()) {
      throw Error(ErrorCode::DegenerateEnsemble, "every curve must match the grid length");
    }
  }
}

// Sorted two-sided pointwise ranks of every curve over the unmasked columns.
std::vector<std::vector<double>> erl_vectors(const CurveEnsemble& e,
                                             const std::vector<char>& masked) {
  const std::size_t m = e.curves.size();
  const double top = static_cast<double>(m) + 1.0;
  std::vector<std::vector<double>> ranks(m);
  std::vector<std::size_t> idx(m);
  for (std::size_t g = 0; g < e.grid.size(); ++g) {
    if (masked[g]) continue;
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return e.curves[a][g] < e.curves[b][g]; });
    std::size_t k = 0;
    while (k < m) {
      std::size_t l = k;
      while (l + 1 < m && e.curves[idx[l + 1]][g] == e.curves[idx[k]][g]) ++l;
      // Positions k..l (0-based) share the average 1-based rank.
      const double below = 0.5 * static_cast<double>(k + l) + 1.0;
      const double two_sided = std::min(below, top - below);
      for (std::size_t q = k; q <= l; ++q) ranks[idx[q]].push_back(two_sided);
      k = l + 1;
    }
  }
  for (auto& v : ranks) std::sort(v.begin(), v.end());
  return ranks;
}

struct Ordering {
  std::vector<double> position;      // average tied position, 1 = most extreme
  std::vector<std::size_t> at_least;  // curves at least as extreme, self included
};

Ordering erl_ordering(const CurveEnsemble& e) {
  check_shape(e);
  const std::vector<char> masked = masked_columns(e);
  if (std::all_of(masked.begin(), masked.end(), [](char c) { return c != 0; })) {
    throw Error(ErrorCode::DegenerateEnsemble, "every grid column is masked");
  }
  const auto vec = erl_vectors(e, masked);
  const std::size_t m = vec.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return vec[a] < vec[b]; });
  Ordering out{std::vector<double>(m), std::vector<std::size_t>(m)};
  std::size_t k = 0;
  while (k < m) {
    std::size_t l = k;
    while (l + 1 < m && vec[idx[l + 1]] == vec[idx[k]]) ++l;
    const double pos = 0.5 * static_cast<double>(k + l) + 1.0;
    for (std::size_t q = k; q <= l; ++q) {
      out.position[idx[q]] = pos;
      out.at_least[idx[q]] = l + 1;
    }
    k = l + 1;
  }
  return out;
}

}  // namespace

std::vector<char> masked_columns(const CurveEnsemble& e) {
  std::vector<char> masked(e.grid.size(), 0);
  for (const auto& c : e.curves) {
    for (std::size_t g = 0; g < masked.size() && g < c.size(); ++g) {
      if (std::isnan(c[g])) masked[g] = 1;
    }
  }
  return masked;
}

std::vector<double> erl_measure(const CurveEnsemble& e) { return erl_ordering(e).position; }

EnvelopeResult global_envelope(const CurveEnsemble& e, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::InvalidParam, "alpha must lie in (0, 1)");
  }
  check_shape(e);
  const std::size_t s = e.curves.size() - 1;
  const double needed = std::ceil(1.0 / alpha - 1e-9) - 1.0;
  if (static_cast<double>(s) < needed) {
    throw Error(ErrorCode::TooFewPermutations,
                "need at least " + std::to_string(static_cast<long>(needed)) +
                    " permutations at this alpha");
  }
  const Ordering ord = erl_ordering(e);
  const std::size_t m = s + 1;
  const std::size_t G = e.grid.size();

  EnvelopeResult out;
  out.r = e.grid;
  out.observed = e.curves[0];
  out.masked = masked_columns(e);
  out.alpha = alpha;
  out.s = s;
  out.erl = ord.position;
  out.p_values.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    out.p_values[k] = static_cast<double>(ord.at_least[k]) / static_cast<double>(m);
  }
  out.erl_rank_observed = ord.position[0];
  out.p_value = out.p_values[0];

  out.lo.assign(G, kNaN);
  out.hi.assign(G, kNaN);
  for (std::size_t g = 0; g < G; ++g) {
    if (out.masked[g]) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t k = 0; k < m; ++k) {
      if (out.p_values[k] <= alpha) continue;
      lo = std::min(lo, e.curves[k][g]);
      hi = std::max(hi, e.curves[k][g]);
    }
    out.lo[g] = lo;
    out.hi[g] = hi;
    if (out.observed[g] < lo || out.observed[g] > hi) out.rejected = true;
  }
  return out;
}

PipelineResult envelope_pipeline(const MarkedPointPattern& p, const TestFunctionSpec& tf,
                                 const EstimationConfig& cfg, std::size_t s, double alpha,
                                 std::uint64_t seed, int threads,
                                 EnvelopeStatistic statistic) {
  if (s == 0) throw Error(ErrorCode::TooFewPermutations, "need at least one permutation");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::InvalidParam, "alpha must lie in (0, 1)");
  }
  const CurveKind kind = statistic == EnvelopeStatistic::mark_correlation
                             ? CurveKind::mark_correlation
                             : CurveKind::weighted_k;
  const bool normalized = statistic == EnvelopeStatistic::mark_correlation
                              ? tf.normalization == Normalization::kappa
                              : statistic == EnvelopeStatistic::weighted_k;

  PipelineResult out;
  out.curve = statistic == EnvelopeStatistic::mark_correlation
                  ? summary_curve(p, tf, cfg, threads)
                  : graph_weighted_K(p, tf, cfg, normalized, threads);

  const CurveEstimator est(p, cfg, kind);
  const TestFunctionTable table(p.marks(), tf, threads);
  const double norm = normalized ? c_hat(table) : 1.0;

  CurveEnsemble ens;
  ens.grid = est.r();
  ens.curves.resize(s + 1);
  ens.curves[0] = out.curve.estimate;
  parallel_for(s, threads, [&](std::size_t k) {
    const auto labels = random_permutation(p.size(), derive_seed(seed, k + 1));
    ens.curves[k + 1] = est.evaluate(table, labels, norm);
  });
  out.envelope = global_envelope(ens, alpha);
  return out;
}

}  // namespace graphmark
