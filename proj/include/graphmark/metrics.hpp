#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphmark/graph.hpp"

namespace graphmark {

enum class MetricKind {
  hamming,
  jaccard,
  frobenius,
  matrix,
  matusita,
  adjacency_spectral,
  laplacian_spectral,
  normalized_laplacian_spectral,
  eigenspectrum,
  spanning_tree,
  ipsen_mikhailov,
  him,
};

inline constexpr MetricKind kAllMetricKinds[] = {
    MetricKind::hamming,
    MetricKind::jaccard,
    MetricKind::frobenius,
    MetricKind::matrix,
    MetricKind::matusita,
    MetricKind::adjacency_spectral,
    MetricKind::laplacian_spectral,
    MetricKind::normalized_laplacian_spectral,
    MetricKind::eigenspectrum,
    MetricKind::spanning_tree,
    MetricKind::ipsen_mikhailov,
    MetricKind::him,
};

enum class DeltaKind { shortest_path, effective_resistance };

enum class PaddingPolicy { auto_pad, require_equal_order };

struct MetricSpec {
  MetricKind kind = MetricKind::hamming;
  DeltaKind delta = DeltaKind::shortest_path;  // matrix distance only
  std::optional<double> eps;                   // matusita; unset = fbp_default_eps
  double sigma = 0.5;                          // eigenspectrum bandwidth
  std::optional<double> xi;                    // ipsen_mikhailov / him; unset = calibrated
  PaddingPolicy padding = PaddingPolicy::auto_pad;
};

std::string_view to_string(MetricKind kind);
std::optional<MetricKind> parse_metric_kind(std::string_view name);
std::string_view to_string(DeltaKind kind);
std::optional<DeltaKind> parse_delta_kind(std::string_view name);
/// e.g. "ipsen_mikhailov(xi=auto)".
std::string describe(const MetricSpec& spec);

enum class MatrixRep { adjacency, laplacian, normalized_laplacian, shortest_path, fbp };

struct RepresentationSpec {
  MatrixRep matrix = MatrixRep::adjacency;
  std::optional<double> eps;  // fbp only; unset = fbp_default_eps
};

std::string_view to_string(MatrixRep rep);
std::optional<MatrixRep> parse_matrix_rep(std::string_view name);

enum class NormKind { frobenius, entrywise_p };

struct NormSpec {
  NormKind kind = NormKind::frobenius;
  double p = 2.0;
};

/// Distance between two graph marks. Orders are reconciled per spec.padding.
double graph_distance(const GraphMark& g1, const GraphMark& g2, const MetricSpec& spec);

/// Frobenius inner product of the chosen matrix representations.
double graph_inner_product(const GraphMark& g1, const GraphMark& g2,
                           const RepresentationSpec& rep,
                           PaddingPolicy padding = PaddingPolicy::auto_pad);

double graph_norm(const GraphMark& g, const RepresentationSpec& rep, const NormSpec& norm);

/// 1 - sum min / sum max over matrix entries; 0 when both are all-zero.
double differentiation_ratio(const GraphMark& g1, const GraphMark& g2,
                             const RepresentationSpec& rep,
                             PaddingPolicy padding = PaddingPolicy::auto_pad);

/// The matrix nabla_G for one graph, with the fbp eps already resolved.
Matrix representation_matrix(const GraphMark& g, MatrixRep rep, double fbp_eps);

/// Common order after applying a padding policy (throws OrderMismatch).
int common_order(std::span<const GraphMark> marks, PaddingPolicy padding);

/// Metric parameters after resolving every "auto" against a set of marks.
struct ResolvedMetric {
  MetricSpec spec;
  int order = 0;             // common (padded) order
  double eps = 0.0;          // matusita
  double xi = 0.0;           // ipsen_mikhailov / him
  double half_line_scale = 0.0;
  double line_lo = 0.0;      // eigenspectrum quadrature range
  double line_hi = 0.0;
};

/// Per-mark features for one metric over a fixed set of marks, so that every
/// pairwise distance reuses the spectra, densities and derived matrices.
/// Auto parameters (xi, eps, quadrature ranges) are resolved once over the
/// whole set; graph_distance() is this panel built on a pair.
class MetricPanel {
 public:
  MetricPanel(std::span<const GraphMark> marks, const MetricSpec& spec, int threads = 1);
  ~MetricPanel();
  MetricPanel(MetricPanel&&) noexcept;
  MetricPanel& operator=(MetricPanel&&) noexcept;

  std::size_t size() const;
  const ResolvedMetric& resolved() const;
  double distance(std::size_t i, std::size_t j) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Per-mark flattened matrix representations for inner products, norms and
/// the differentiation ratio.
class RepresentationPanel {
 public:
  RepresentationPanel(std::span<const GraphMark> marks, const RepresentationSpec& rep,
                      PaddingPolicy padding = PaddingPolicy::auto_pad, int threads = 1);

  std::size_t size() const { return entries_.size(); }
  int order() const { return order_; }
  double fbp_eps() const { return eps_; }

  double inner_product(std::size_t i, std::size_t j) const;
  double norm(std::size_t i, const NormSpec& norm) const;
  double differentiation(std::size_t i, std::size_t j) const;

 private:
  int order_ = 0;
  double eps_ = 0.0;
  std::vector<std::vector<double>> entries_;
  std::vector<char> has_negative_;
};

}  // namespace graphmark
