#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphmark/metrics.hpp"
#include "graphmark/pattern.hpp"

namespace graphmark {

enum class TestFunctionKind {
  variogram,        // 0.5 d(G_i, G_j)^2
  correlation,      // <nabla_i, nabla_j>_F
  r_mark_first,     // ||nabla_i||
  r_mark_second,    // ||nabla_j||
  differentiation,  // 1 - sum min / sum max
  custom_distance,  // d(G_i, G_j)
};

enum class Normalization { raw, kappa };

struct TestFunctionSpec {
  TestFunctionKind kind = TestFunctionKind::variogram;
  MetricSpec metric;
  RepresentationSpec rep;
  NormSpec norm;
  Normalization normalization = Normalization::raw;
};

std::string_view to_string(TestFunctionKind kind);
std::optional<TestFunctionKind> parse_test_function_kind(std::string_view name);
std::string describe(const TestFunctionSpec& tf);

enum class KernelKind { epanechnikov, box, gaussian };
enum class EdgeCorrection { none, translation };

std::string_view to_string(KernelKind kind);
std::optional<KernelKind> parse_kernel_kind(std::string_view name);
std::string_view to_string(EdgeCorrection kind);
std::optional<EdgeCorrection> parse_edge_correction(std::string_view name);

struct EstimationConfig {
  std::vector<double> r_grid;       // empty: default_r_grid(window)
  KernelKind kernel = KernelKind::epanechnikov;
  std::optional<double> bandwidth;  // unset: bandwidth_auto
  EdgeCorrection edge_correction = EdgeCorrection::translation;
};

/// Kernel K_b(u) and the half-width beyond which it vanishes (inf for gaussian).
double kernel_value(KernelKind kind, double u, double bandwidth);
double kernel_support(KernelKind kind, double bandwidth);

/// 0.15 / sqrt(intensity).
double bandwidth_auto(const MarkedPointPattern& p);

/// 64 equally spaced points on (0, 0.25 * shorter window side].
std::vector<double> default_r_grid(const Window& w, int points = 64);

struct SummaryCurve {
  std::string statistic;
  std::vector<double> r;
  std::vector<double> estimate;  // NaN where no pair carries kernel mass
  std::vector<double> l_transform;  // sqrt(K / pi); K-type curves only
  std::size_t points = 0;
  double intensity = 0.0;
  double bandwidth = 0.0;
  std::optional<double> c_hat;
};

/// t_f(G_i, G_j) for every ordered pair of marks in a set. All metric "auto"
/// parameters are resolved against the whole set.
class TestFunctionTable {
 public:
  TestFunctionTable(std::span<const GraphMark> marks, const TestFunctionSpec& tf,
                    int threads = 1);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  const TestFunctionSpec& spec() const { return spec_; }

 private:
  TestFunctionSpec spec_;
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// (1/(n(n-1))) sum_{i != j} t_f(G_i, G_j). Summed in sorted order so the
/// value depends only on the multiset of marks.
double c_hat(const TestFunctionTable& table);
double c_hat(std::span<const GraphMark> marks, const TestFunctionSpec& tf);

enum class CurveKind {
  mark_correlation,  // rho_tf / rho ratio (optionally / c_hat)
  weighted_k,        // mark-weighted K, optionally / c_hat
};

/// Pair geometry of a fixed set of locations on a fixed r grid. Curves for
/// any assignment of marks to points are sums over the same precomputed pair
/// weights, visited in a canonical (x, y)-sorted point order so the result
/// does not depend on how the input points were ordered.
class CurveEstimator {
 public:
  CurveEstimator(const MarkedPointPattern& p, const EstimationConfig& cfg, CurveKind kind);

  const std::vector<double>& r() const { return r_; }
  double bandwidth() const { return bandwidth_; }
  double intensity() const { return intensity_; }
  std::size_t points() const { return n_; }

  /// Unmarked pair density rho^(2)(r) on the grid (mark_correlation only).
  const std::vector<double>& pair_density() const { return pair_density_; }

  /// Marked density rho_tf^(2)(r) with point i carrying table row labels[i].
  std::vector<double> test_density(const TestFunctionTable& table,
                                   std::span<const std::size_t> labels) const;

  /// Final curve: mark_correlation gives rho_tf / rho (divided by
  /// `normalizer`); weighted_k gives area / (n^2 normalizer) * sum t e 1{d <= r}.
  std::vector<double> evaluate(const TestFunctionTable& table,
                               std::span<const std::size_t> labels,
                               double normalizer = 1.0) const;

 private:
  CurveKind kind_;
  std::size_t n_ = 0;
  double area_ = 0.0;
  double intensity_ = 0.0;
  double bandwidth_ = 0.0;
  std::vector<double> r_;
  std::vector<std::size_t> canonical_;  // canonical position -> input index
  // Pairs (a < b in canonical order) with contributions on the grid:
  // entries [offset[p], offset[p+1]) of (grid index, weight).
  std::vector<std::size_t> pair_a_;
  std::vector<std::size_t> pair_b_;
  std::vector<std::size_t> offset_;
  std::vector<std::size_t> grid_index_;
  std::vector<double> weight_;
  std::vector<double> pair_density_;
};

double test_density_hat(const MarkedPointPattern& p, const TestFunctionSpec& tf,
                        const EstimationConfig& cfg, double r);
double pair_density_hat(const MarkedPointPattern& p, const EstimationConfig& cfg, double r);

/// c_tf(r) = rho_tf / rho, or kappa_tf(r) = c_tf(r) / c_hat in kappa mode.
SummaryCurve summary_curve(const MarkedPointPattern& p, const TestFunctionSpec& tf,
                           const EstimationConfig& cfg, int threads = 1);

/// Mark-weighted K (normalized by c_hat) or its unnormalized C variant, with
/// L(r) = sqrt(K(r) / pi) alongside.
SummaryCurve graph_weighted_K(const MarkedPointPattern& p, const TestFunctionSpec& tf,
                              const EstimationConfig& cfg, bool normalized, int threads = 1);

}  // namespace graphmark
