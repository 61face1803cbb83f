#include "graphmark/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "graphmark/error.hpp"
#include "graphmark/parallel.hpp"

namespace graphmark {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_grid(const std::vector<double>& r, bool allow_zero) {
  if (r.empty()) throw Error(ErrorCode::InvalidParam, "r grid is empty");
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (!std::isfinite(r[k])) throw Error(ErrorCode::InvalidParam, "r grid has a non-finite value");
    if (allow_zero ? r[k] < 0.0 : !(r[k] > 0.0)) {
      throw Error(ErrorCode::NonpositiveR, "r values must be positive");
    }
    if (k > 0 && !(r[k] > r[k - 1])) {
      throw Error(ErrorCode::InvalidParam, "r grid must be strictly increasing");
    }
  }
}

// Sum of a sequence independent of its order.
double sorted_sum(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

bool mark_less(const GraphMark& a, const GraphMark& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  const double* x = a.adjacency().data();
  const double* y = b.adjacency().data();
  return std::lexicographical_compare(x, x + a.adjacency().size(), y, y + b.adjacency().size());
}

std::string statistic_name(const TestFunctionSpec& tf, CurveKind kind, bool normalized) {
  if (kind == CurveKind::weighted_k) {
    return std::string(normalized ? "K" : "C") + "[" + describe(tf) + "]";
  }
  std::string prefix = tf.normalization == Normalization::kappa ? "kappa" : "c";
  return prefix + "[" + describe(tf) + "]";
}

}  // namespace

std::string_view to_string(TestFunctionKind kind) {
  switch (kind) {
    case TestFunctionKind::variogram: return "variogram";
    case TestFunctionKind::correlation: return "correlation";
    case TestFunctionKind::r_mark_first: return "r_mark_first";
    case TestFunctionKind::r_mark_second: return "r_mark_second";
    case TestFunctionKind::differentiation: return "differentiation";
    case TestFunctionKind::custom_distance: return "custom_distance";
  }
  return "unknown";
}

std::optional<TestFunctionKind> parse_test_function_kind(std::string_view name) {
  for (auto k : {TestFunctionKind::variogram, TestFunctionKind::correlation,
                 TestFunctionKind::r_mark_first, TestFunctionKind::r_mark_second,
                 TestFunctionKind::differentiation, TestFunctionKind::custom_distance}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string describe(const TestFunctionSpec& tf) {
  std::string s(to_string(tf.kind));
  switch (tf.kind) {
    case TestFunctionKind::variogram:
    case TestFunctionKind::custom_distance:
      s += ":" + describe(tf.metric);
      break;
    case TestFunctionKind::r_mark_first:
    case TestFunctionKind::r_mark_second:
      s += ":" + std::string(to_string(tf.rep.matrix));
      s += tf.norm.kind == NormKind::frobenius ? "/frobenius"
                                               : "/p=" + std::to_string(tf.norm.p);
      break;
    default:
      s += ":" + std::string(to_string(tf.rep.matrix));
  }
  return s;
}

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::epanechnikov: return "epanechnikov";
    case KernelKind::box: return "box";
    case KernelKind::gaussian: return "gaussian";
  }
  return "unknown";
}

std::optional<KernelKind> parse_kernel_kind(std::string_view name) {
  for (auto k : {KernelKind::epanechnikov, KernelKind::box, KernelKind::gaussian}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(EdgeCorrection kind) {
  return kind == EdgeCorrection::none ? "none" : "translation";
}

std::optional<EdgeCorrection> parse_edge_correction(std::string_view name) {
  if (name == "none") return EdgeCorrection::none;
  if (name == "translation") return EdgeCorrection::translation;
  return std::nullopt;
}

double kernel_value(KernelKind kind, double u, double b) {
  const double z = u / b;
  switch (kind) {
    case KernelKind::epanechnikov:
      return std::abs(z) <= 1.0 ? 0.75 / b * (1.0 - z * z) : 0.0;
    case KernelKind::box:
      return std::abs(z) <= 1.0 ? 0.5 / b : 0.0;
    case KernelKind::gaussian:
      return std::exp(-0.5 * z * z) / (b * std::sqrt(2.0 * std::numbers::pi));
  }
  return 0.0;
}

double kernel_support(KernelKind kind, double b) {
  return kind == KernelKind::gaussian ? std::numeric_limits<double>::infinity() : b;
}

double bandwidth_auto(const MarkedPointPattern& p) { return 0.15 / std::sqrt(intensity_hat(p)); }

std::vector<double> default_r_grid(const Window& w, int points) {
  if (points < 1) throw Error(ErrorCode::InvalidParam, "grid needs at least one point");
  const double rmax = 0.25 * w.min_side();
  std::vector<double> r(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) r[k] = rmax * (k + 1) / points;
  return r;
}

TestFunctionTable::TestFunctionTable(std::span<const GraphMark> marks, const TestFunctionSpec& tf,
                                     int threads)
    : spec_(tf), n_(marks.size()), values_(n_ * n_, 0.0) {
  const std::size_t n = n_;
  if (n == 0) return;
  // Each unordered pair is evaluated with its marks in a fixed orientation,
  // so the value cannot depend on where the marks sit in the input.
  auto fill_symmetric = [&](auto&& f) {
    parallel_for(n, threads, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        values_[i * n + j] = mark_less(marks[j], marks[i]) ? f(j, i) : f(i, j);
      }
    });
    for (std::size_t i = 0; i < n; ++i) {
      values_[i * n + i] = f(i, i);
      for (std::size_t j = i + 1; j < n; ++j) values_[j * n + i] = values_[i * n + j];
    }
  };
  switch (tf.kind) {
    case TestFunctionKind::variogram:
    case TestFunctionKind::custom_distance: {
      MetricPanel panel(marks, tf.metric, threads);
      const bool half_square = tf.kind == TestFunctionKind::variogram;
      fill_symmetric([&](std::size_t i, std::size_t j) {
        const double d = panel.distance(i, j);
        return half_square ? 0.5 * d * d : d;
      });
      break;
    }
    case TestFunctionKind::correlation: {
      RepresentationPanel panel(marks, tf.rep, tf.metric.padding, threads);
      fill_symmetric([&](std::size_t i, std::size_t j) { return panel.inner_product(i, j); });
      break;
    }
    case TestFunctionKind::differentiation: {
      RepresentationPanel panel(marks, tf.rep, tf.metric.padding, threads);
      fill_symmetric([&](std::size_t i, std::size_t j) { return panel.differentiation(i, j); });
      break;
    }
    case TestFunctionKind::r_mark_first:
    case TestFunctionKind::r_mark_second: {
      RepresentationPanel panel(marks, tf.rep, tf.metric.padding, threads);
      std::vector<double> norms(n);
      for (std::size_t i = 0; i < n; ++i) norms[i] = panel.norm(i, tf.norm);
      const bool first = tf.kind == TestFunctionKind::r_mark_first;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) values_[i * n + j] = first ? norms[i] : norms[j];
      }
      break;
    }
  }
}

double c_hat(const TestFunctionTable& table) {
  const std::size_t n = table.size();
  if (n < 2) throw Error(ErrorCode::TooFewMarks, "c_hat needs at least two marks");
  std::vector<double> v;
  v.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) v.push_back(table(i, j));
    }
  }
  return sorted_sum(std::move(v)) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double c_hat(std::span<const GraphMark> marks, const TestFunctionSpec& tf) {
  if (marks.size() < 2) throw Error(ErrorCode::TooFewMarks, "c_hat needs at least two marks");
  return c_hat(TestFunctionTable(marks, tf));
}

CurveEstimator::CurveEstimator(const MarkedPointPattern& p, const EstimationConfig& cfg,
                               CurveKind kind)
    : kind_(kind), n_(p.size()) {
  if (n_ < 2) throw Error(ErrorCode::TooFewPoints, "estimation needs at least two points");
  const Window& w = p.window();
  area_ = w.area();
  intensity_ = intensity_hat(p);
  r_ = cfg.r_grid.empty() ? default_r_grid(w) : cfg.r_grid;
  validate_grid(r_, kind == CurveKind::weighted_k);
  if (cfg.bandwidth) {
    if (!(*cfg.bandwidth > 0.0) || !std::isfinite(*cfg.bandwidth)) {
      throw Error(ErrorCode::InvalidParam, "bandwidth must be positive");
    }
    bandwidth_ = *cfg.bandwidth;
  } else {
    bandwidth_ = bandwidth_auto(p);
  }

  const auto& pts = p.points();
  canonical_.resize(n_);
  std::iota(canonical_.begin(), canonical_.end(), 0);
  std::sort(canonical_.begin(), canonical_.end(), [&](std::size_t a, std::size_t b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    return pts[a].y < pts[b].y;
  });

  const std::size_t G = r_.size();
  const double support = kernel_support(cfg.kernel, bandwidth_);
  offset_.push_back(0);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = a + 1; b < n_; ++b) {
      const Point& xa = pts[canonical_[a]];
      const Point& xb = pts[canonical_[b]];
      const double d = distance(xa, xb);
      double e = 1.0;
      bool edge_done = false;
      auto edge = [&]() {
        if (!edge_done && cfg.edge_correction == EdgeCorrection::translation) {
          e = translation_edge_factor(xa, xb, w);
        }
        edge_done = true;
        return e;
      };
      const std::size_t before = weight_.size();
      if (kind == CurveKind::weighted_k) {
        const auto it = std::lower_bound(r_.begin(), r_.end(), d);
        if (it != r_.end()) {
          grid_index_.push_back(static_cast<std::size_t>(it - r_.begin()));
          weight_.push_back(edge());
        }
      } else {
        const auto lo = std::lower_bound(r_.begin(), r_.end(), d - support);
        for (auto it = lo; it != r_.end() && *it <= d + support; ++it) {
          const double k = kernel_value(cfg.kernel, d - *it, bandwidth_);
          if (k == 0.0) continue;
          const double e_ij = edge();
          if (!std::isfinite(e_ij)) continue;
          grid_index_.push_back(static_cast<std::size_t>(it - r_.begin()));
          weight_.push_back(k * e_ij / (2.0 * std::numbers::pi * *it * area_));
        }
      }
      if (weight_.size() != before) {
        pair_a_.push_back(a);
        pair_b_.push_back(b);
        offset_.push_back(weight_.size());
      }
    }
  }

  if (kind == CurveKind::mark_correlation) {
    pair_density_.assign(G, 0.0);
    for (std::size_t q = 0; q + 1 < offset_.size(); ++q) {
      for (std::size_t e = offset_[q]; e < offset_[q + 1]; ++e) {
        pair_density_[grid_index_[e]] += 2.0 * weight_[e];
      }
    }
  }
}

std::vector<double> CurveEstimator::test_density(const TestFunctionTable& table,
                                                 std::span<const std::size_t> labels) const {
  if (labels.size() != n_) throw Error(ErrorCode::InvalidParam, "one label per point required");
  std::vector<double> out(r_.size(), 0.0);
  for (std::size_t q = 0; q + 1 < offset_.size(); ++q) {
    const std::size_t la = labels[canonical_[pair_a_[q]]];
    const std::size_t lb = labels[canonical_[pair_b_[q]]];
    const double t = table(la, lb) + table(lb, la);
    if (t == 0.0) continue;
    for (std::size_t e = offset_[q]; e < offset_[q + 1]; ++e) out[grid_index_[e]] += t * weight_[e];
  }
  return out;
}

std::vector<double> CurveEstimator::evaluate(const TestFunctionTable& table,
                                             std::span<const std::size_t> labels,
                                             double normalizer) const {
  std::vector<double> s = test_density(table, labels);
  if (kind_ == CurveKind::mark_correlation) {
    for (std::size_t g = 0; g < s.size(); ++g) {
      s[g] = pair_density_[g] > 0.0 ? s[g] / pair_density_[g] / normalizer : kNaN;
    }
    return s;
  }
  const double scale = area_ / (static_cast<double>(n_) * static_cast<double>(n_) * normalizer);
  double running = 0.0;
  for (double& v : s) {
    running += v;
    v = scale * running;
  }
  return s;
}

namespace {

std::vector<std::size_t> identity_labels(std::size_t n) {
  std::vector<std::size_t> l(n);
  std::iota(l.begin(), l.end(), 0);
  return l;
}

EstimationConfig single_r(const EstimationConfig& cfg, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::NonpositiveR, "r must be positive");
  EstimationConfig c = cfg;
  c.r_grid = {r};
  return c;
}

}  // namespace

double test_density_hat(const MarkedPointPattern& p, const TestFunctionSpec& tf,
                        const EstimationConfig& cfg, double r) {
  if (p.size() < 2) throw Error(ErrorCode::TooFewPoints, "estimation needs at least two points");
  CurveEstimator est(p, single_r(cfg, r), CurveKind::mark_correlation);
  TestFunctionTable table(p.marks(), tf);
  return est.test_density(table, identity_labels(p.size()))[0];
}

double pair_density_hat(const MarkedPointPattern& p, const EstimationConfig& cfg, double r) {
  if (p.size() < 2) throw Error(ErrorCode::TooFewPoints, "estimation needs at least two points");
  CurveEstimator est(p, single_r(cfg, r), CurveKind::mark_correlation);
  return est.pair_density()[0];
}

SummaryCurve summary_curve(const MarkedPointPattern& p, const TestFunctionSpec& tf,
                           const EstimationConfig& cfg, int threads) {
  CurveEstimator est(p, cfg, CurveKind::mark_correlation);
  TestFunctionTable table(p.marks(), tf, threads);
  SummaryCurve out;
  out.statistic = statistic_name(tf, CurveKind::mark_correlation, false);
  out.r = est.r();
  out.points = est.points();
  out.intensity = est.intensity();
  out.bandwidth = est.bandwidth();
  double norm = 1.0;
  if (tf.normalization == Normalization::kappa) {
    out.c_hat = c_hat(table);
    norm = *out.c_hat;
  }
  out.estimate = est.evaluate(table, identity_labels(p.size()), norm);
  return out;
}

SummaryCurve graph_weighted_K(const MarkedPointPattern& p, const TestFunctionSpec& tf,
                              const EstimationConfig& cfg, bool normalized, int threads) {
  CurveEstimator est(p, cfg, CurveKind::weighted_k);
  TestFunctionTable table(p.marks(), tf, threads);
  SummaryCurve out;
  out.statistic = statistic_name(tf, CurveKind::weighted_k, normalized);
  out.r = est.r();
  out.points = est.points();
  out.intensity = est.intensity();
  out.bandwidth = est.bandwidth();
  double norm = 1.0;
  if (normalized) {
    out.c_hat = c_hat(table);
    norm = *out.c_hat;
  }
  out.estimate = est.evaluate(table, identity_labels(p.size()), norm);
  out.l_transform.resize(out.estimate.size());
  for (std::size_t g = 0; g < out.estimate.size(); ++g) {
    const double k = out.estimate[g];
    out.l_transform[g] = k >= 0.0 ? std::sqrt(k / std::numbers::pi) : kNaN;
  }
  return out;
}

}  // namespace graphmark
