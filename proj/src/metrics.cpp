#include "graphmark/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "graphmark/error.hpp"
#include "graphmark/parallel.hpp"
#include "graphmark/simd/kernels.hpp"
#include "graphmark/spectral_density.hpp"

namespace graphmark {

namespace {

constexpr std::array<std::pair<MetricKind, std::string_view>, 12> kMetricNames{{
    {MetricKind::hamming, "hamming"},
    {MetricKind::jaccard, "jaccard"},
    {MetricKind::frobenius, "frobenius"},
    {MetricKind::matrix, "matrix"},
    {MetricKind::matusita, "matusita"},
    {MetricKind::adjacency_spectral, "adjacency_spectral"},
    {MetricKind::laplacian_spectral, "laplacian_spectral"},
    {MetricKind::normalized_laplacian_spectral, "normalized_laplacian_spectral"},
    {MetricKind::eigenspectrum, "eigenspectrum"},
    {MetricKind::spanning_tree, "spanning_tree"},
    {MetricKind::ipsen_mikhailov, "ipsen_mikhailov"},
    {MetricKind::him, "him"},
}};

constexpr std::array<std::pair<MatrixRep, std::string_view>, 5> kRepNames{{
    {MatrixRep::adjacency, "adjacency"},
    {MatrixRep::laplacian, "laplacian"},
    {MatrixRep::normalized_laplacian, "normalized_laplacian"},
    {MatrixRep::shortest_path, "shortest_path"},
    {MatrixRep::fbp, "fbp"},
}};

// FBP entries below this are numerical noise around an exact zero.
constexpr double kFbpNegativeTol = 1e-9;

std::vector<double> flatten(const Matrix& m) {
  return std::vector<double>(m.data(), m.data() + m.size());
}

bool uses_xi(MetricKind kind) {
  return kind == MetricKind::ipsen_mikhailov || kind == MetricKind::him;
}

}  // namespace

std::string_view to_string(MetricKind kind) {
  for (auto [k, name] : kMetricNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<MetricKind> parse_metric_kind(std::string_view name) {
  for (auto [k, n] : kMetricNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(DeltaKind kind) {
  return kind == DeltaKind::shortest_path ? "shortest_path" : "effective_resistance";
}

std::optional<DeltaKind> parse_delta_kind(std::string_view name) {
  if (name == "shortest_path") return DeltaKind::shortest_path;
  if (name == "effective_resistance") return DeltaKind::effective_resistance;
  return std::nullopt;
}

std::string describe(const MetricSpec& spec) {
  std::ostringstream os;
  os << to_string(spec.kind);
  switch (spec.kind) {
    case MetricKind::matrix: os << "(delta=" << to_string(spec.delta) << ")"; break;
    case MetricKind::matusita:
      os << "(eps=";
      if (spec.eps) os << *spec.eps; else os << "auto";
      os << ")";
      break;
    case MetricKind::eigenspectrum: os << "(sigma=" << spec.sigma << ")"; break;
    case MetricKind::ipsen_mikhailov:
    case MetricKind::him:
      os << "(xi=";
      if (spec.xi) os << *spec.xi; else os << "auto";
      os << ")";
      break;
    default: break;
  }
  return os.str();
}

std::string_view to_string(MatrixRep rep) {
  for (auto [r, name] : kRepNames) {
    if (r == rep) return name;
  }
  return "unknown";
}

std::optional<MatrixRep> parse_matrix_rep(std::string_view name) {
  for (auto [r, n] : kRepNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

int common_order(std::span<const GraphMark> marks, PaddingPolicy padding) {
  if (marks.empty()) return 0;
  int lo = marks.front().order();
  int hi = lo;
  for (const auto& g : marks) {
    lo = std::min(lo, g.order());
    hi = std::max(hi, g.order());
  }
  if (lo != hi && padding == PaddingPolicy::require_equal_order) {
    throw Error(ErrorCode::OrderMismatch, "graph orders differ (" + std::to_string(lo) + " vs " +
                                              std::to_string(hi) + ")");
  }
  return hi;
}

Matrix representation_matrix(const GraphMark& g, MatrixRep rep, double fbp_eps) {
  switch (rep) {
    case MatrixRep::adjacency: return g.adjacency();
    case MatrixRep::laplacian: return laplacian(g);
    case MatrixRep::normalized_laplacian: return normalized_laplacian(g);
    case MatrixRep::shortest_path: {
      Matrix m = shortest_path_matrix(g);
      if (!m.allFinite()) {
        throw Error(ErrorCode::DisconnectedForDelta,
                    "shortest-path matrix of a disconnected graph has infinite entries");
      }
      return m;
    }
    case MatrixRep::fbp: return fbp_matrix(g, fbp_eps);
  }
  return g.adjacency();
}

// ---------------------------------------------------------------------------
// MetricPanel

struct MetricPanel::Impl {
  ResolvedMetric resolved;
  std::size_t count = 0;
  // Per-mark features; which ones are filled depends on the metric kind.
  std::vector<std::vector<double>> flat;       // adjacency / delta / sqrt(W), column-major
  std::vector<std::vector<double>> values;     // sorted spectra or tabulated densities
  std::vector<double> log_trees;
  std::unique_ptr<HalfLineGrid> half_line;
  std::unique_ptr<LineGrid> line;

  double hamming(std::size_t i, std::size_t j) const {
    const double n = resolved.order;
    if (resolved.order < 2) return 0.0;
    return simd::sum_abs_diff(flat[i], flat[j]) / (n * (n - 1.0));
  }

  double ipsen_mikhailov(std::size_t i, std::size_t j) const {
    const double sq = simd::weighted_sq_diff(half_line->weights(), values[i], values[j]);
    return std::sqrt(std::max(sq, 0.0));
  }

  double distance(std::size_t i, std::size_t j) const;
};

double MetricPanel::Impl::distance(std::size_t i, std::size_t j) const {
  switch (resolved.spec.kind) {
    case MetricKind::hamming: return hamming(i, j);
    case MetricKind::jaccard: {
      const double l1 = simd::sum_abs_diff(flat[i], flat[j]);
      if (l1 == 0.0) return 0.0;
      const int n = resolved.order;
      const Eigen::Map<const Matrix> a(flat[i].data(), n, n);
      const Eigen::Map<const Matrix> b(flat[j].data(), n, n);
      const Matrix diff = a - b;
      // Symmetric difference: singular values are |eigenvalues|.
      Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
      const double nuclear = solver.eigenvalues().cwiseAbs().sum();
      return l1 / nuclear;
    }
    case MetricKind::frobenius:
      return std::sqrt(simd::sum_sq_diff(flat[i], flat[j]));
    case MetricKind::matrix:
      return simd::sum_abs_diff(flat[i], flat[j]);
    case MetricKind::matusita:
      return std::sqrt(simd::sum_sqrt_diff_sq(flat[i], flat[j]));
    case MetricKind::adjacency_spectral:
    case MetricKind::laplacian_spectral:
    case MetricKind::normalized_laplacian_spectral:
      return std::sqrt(simd::sum_sq_diff(values[i], values[j]));
    case MetricKind::eigenspectrum:
      return density_l1_distance(values[i], values[j], *line);
    case MetricKind::spanning_tree:
      return std::abs(log_trees[i] - log_trees[j]);
    case MetricKind::ipsen_mikhailov:
      return ipsen_mikhailov(i, j);
    case MetricKind::him: {
      const double im = ipsen_mikhailov(i, j);
      const double h = hamming(i, j);
      return std::sqrt(im * im + h * h) / std::sqrt(1.0 + resolved.xi);
    }
  }
  return 0.0;
}

MetricPanel::MetricPanel(std::span<const GraphMark> marks, const MetricSpec& spec, int threads)
    : impl_(std::make_unique<Impl>()) {
  Impl& p = *impl_;
  p.resolved.spec = spec;
  p.count = marks.size();
  if (marks.empty()) return;
  if (uses_xi(spec.kind) && spec.xi && !(*spec.xi > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "xi must be positive");
  }
  if (spec.kind == MetricKind::eigenspectrum && !(spec.sigma > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "sigma must be positive");
  }
  if (spec.kind == MetricKind::matusita && spec.eps && !(*spec.eps > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "eps must be positive");
  }

  const int order = common_order(marks, spec.padding);
  p.resolved.order = order;
  std::vector<GraphMark> padded;
  padded.reserve(marks.size());
  for (const auto& g : marks) padded.push_back(pad_to_order(g, order));

  const std::size_t n = marks.size();
  const MetricKind kind = spec.kind;
  switch (kind) {
    case MetricKind::hamming:
    case MetricKind::jaccard:
    case MetricKind::frobenius:
      p.flat.resize(n);
      for (std::size_t i = 0; i < n; ++i) p.flat[i] = flatten(padded[i].adjacency());
      break;

    case MetricKind::matrix:
      p.flat.resize(n);
      parallel_for(n, threads, [&](std::size_t i) {
        Matrix m;
        if (spec.delta == DeltaKind::shortest_path) {
          m = shortest_path_matrix(padded[i]);
          if (!m.allFinite()) {
            throw Error(ErrorCode::DisconnectedForDelta,
                        "shortest-path distance undefined between components");
          }
        } else {
          if (!is_connected(padded[i])) {
            throw Error(ErrorCode::DisconnectedForDelta,
                        "effective resistance undefined on a disconnected graph");
          }
          m = effective_resistance_matrix(padded[i]);
        }
        p.flat[i] = flatten(m);
      });
      break;

    case MetricKind::matusita: {
      double max_deg = 0.0;
      for (const auto& g : padded) max_deg = std::max(max_deg, g.max_degree());
      p.resolved.eps = spec.eps ? *spec.eps : fbp_default_eps(max_deg);
      p.flat.resize(n);
      parallel_for(n, threads, [&](std::size_t i) {
        std::vector<double> w = flatten(fbp_matrix(padded[i], p.resolved.eps));
        for (double& x : w) {
          if (x < -kFbpNegativeTol) {
            throw Error(ErrorCode::NegativeEntries,
                        "FBP matrix has negative entries; Matusita needs W >= 0 (lower eps)");
          }
          x = std::max(x, 0.0);
        }
        p.flat[i] = std::move(w);
      });
      break;
    }

    case MetricKind::adjacency_spectral:
    case MetricKind::laplacian_spectral:
    case MetricKind::normalized_laplacian_spectral:
      p.values.resize(n);
      parallel_for(n, threads, [&](std::size_t i) {
        if (kind == MetricKind::adjacency_spectral) {
          p.values[i] = spectrum(padded[i].adjacency(), SpectrumOrder::descending).eigenvalues;
        } else if (kind == MetricKind::laplacian_spectral) {
          p.values[i] = spectrum(laplacian(padded[i]), SpectrumOrder::ascending).eigenvalues;
        } else {
          p.values[i] =
              spectrum(normalized_laplacian(padded[i]), SpectrumOrder::ascending).eigenvalues;
        }
      });
      break;

    case MetricKind::eigenspectrum: {
      std::vector<std::vector<double>> eig(n);
      parallel_for(n, threads, [&](std::size_t i) {
        eig[i] = spectrum(padded[i].adjacency(), SpectrumOrder::ascending).eigenvalues;
      });
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const auto& e : eig) {
        lo = std::min(lo, e.front());
        hi = std::max(hi, e.back());
      }
      p.resolved.line_lo = lo - 5.0 * spec.sigma;
      p.resolved.line_hi = hi + 5.0 * spec.sigma;
      p.line = std::make_unique<LineGrid>(p.resolved.line_lo, p.resolved.line_hi);
      p.values.resize(n);
      parallel_for(n, threads, [&](std::size_t i) {
        p.values[i] = gaussian_spectral_density(eig[i], spec.sigma, *p.line);
      });
      break;
    }

    case MetricKind::spanning_tree:
      // Tree counts are intrinsic to each graph; artificial isolated nodes
      // would only disconnect it.
      p.log_trees.resize(n);
      parallel_for(n, threads, [&](std::size_t i) {
        const double lt = log_spanning_tree_count(marks[i]);
        if (std::isinf(lt)) {
          throw Error(ErrorCode::DisconnectedForSpanningTree,
                      "spanning tree distance needs connected graphs");
        }
        p.log_trees[i] = lt;
      });
      break;

    case MetricKind::ipsen_mikhailov:
    case MetricKind::him: {
      p.resolved.xi = spec.xi ? *spec.xi : (order >= 2 ? calibrate_im_xi(order) : 1.0);
      std::vector<std::vector<double>> freq(n);
      parallel_for(n, threads, [&](std::size_t i) { freq[i] = vibrational_frequencies(padded[i]); });
      double top = 0.0;
      for (const auto& f : freq) top = std::max(top, f.back());
      p.resolved.half_line_scale = half_line_scale(p.resolved.xi, top);
      p.half_line = std::make_unique<HalfLineGrid>(p.resolved.half_line_scale);
      p.values.resize(n);
      parallel_for(n, threads, [&](std::size_t i) {
        p.values[i] = lorentz_density(freq[i], p.resolved.xi, *p.half_line).values;
      });
      if (kind == MetricKind::him) {
        p.flat.resize(n);
        for (std::size_t i = 0; i < n; ++i) p.flat[i] = flatten(padded[i].adjacency());
      }
      break;
    }
  }
}

MetricPanel::~MetricPanel() = default;
MetricPanel::MetricPanel(MetricPanel&&) noexcept = default;
MetricPanel& MetricPanel::operator=(MetricPanel&&) noexcept = default;

std::size_t MetricPanel::size() const { return impl_->count; }

const ResolvedMetric& MetricPanel::resolved() const { return impl_->resolved; }

double MetricPanel::distance(std::size_t i, std::size_t j) const {
  if (i >= impl_->count || j >= impl_->count) {
    throw Error(ErrorCode::IndexOutOfRange, "mark index out of range");
  }
  if (i == j) return 0.0;
  return impl_->distance(i, j);
}

double graph_distance(const GraphMark& g1, const GraphMark& g2, const MetricSpec& spec) {
  const GraphMark pair[] = {g1, g2};
  return MetricPanel(pair, spec).distance(0, 1);
}

// ---------------------------------------------------------------------------
// RepresentationPanel

RepresentationPanel::RepresentationPanel(std::span<const GraphMark> marks,
                                         const RepresentationSpec& rep, PaddingPolicy padding,
                                         int threads) {
  if (rep.eps && !(*rep.eps > 0.0)) throw Error(ErrorCode::InvalidEps, "eps must be positive");
  order_ = common_order(marks, padding);
  double max_deg = 0.0;
  for (const auto& g : marks) max_deg = std::max(max_deg, g.max_degree());
  eps_ = rep.eps ? *rep.eps : fbp_default_eps(max_deg);
  entries_.resize(marks.size());
  has_negative_.assign(marks.size(), 0);
  parallel_for(marks.size(), threads, [&](std::size_t i) {
    const GraphMark g = pad_to_order(marks[i], order_);
    entries_[i] = flatten(representation_matrix(g, rep.matrix, eps_));
    has_negative_[i] =
        std::any_of(entries_[i].begin(), entries_[i].end(), [](double x) { return x < 0.0; });
  });
}

double RepresentationPanel::inner_product(std::size_t i, std::size_t j) const {
  return simd::dot(entries_.at(i), entries_.at(j));
}

double RepresentationPanel::norm(std::size_t i, const NormSpec& norm) const {
  const auto& x = entries_.at(i);
  if (norm.kind == NormKind::frobenius) return std::sqrt(simd::dot(x, x));
  if (!(norm.p >= 1.0) || !std::isfinite(norm.p)) {
    throw Error(ErrorCode::InvalidParam, "entrywise norm needs p >= 1");
  }
  if (norm.p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), norm.p);
  return std::pow(s, 1.0 / norm.p);
}

double RepresentationPanel::differentiation(std::size_t i, std::size_t j) const {
  if (has_negative_.at(i) || has_negative_.at(j)) {
    throw Error(ErrorCode::NegativeEntries,
                "differentiation ratio needs a nonnegative matrix representation");
  }
  double lo = 0.0;
  double hi = 0.0;
  simd::sum_min_max(entries_[i], entries_[j], lo, hi);
  if (hi == 0.0) return 0.0;
  return 1.0 - lo / hi;
}

double graph_inner_product(const GraphMark& g1, const GraphMark& g2,
                           const RepresentationSpec& rep, PaddingPolicy padding) {
  const GraphMark pair[] = {g1, g2};
  return RepresentationPanel(pair, rep, padding).inner_product(0, 1);
}

double graph_norm(const GraphMark& g, const RepresentationSpec& rep, const NormSpec& norm) {
  if (norm.kind == NormKind::entrywise_p && (!(norm.p >= 1.0) || !std::isfinite(norm.p))) {
    throw Error(ErrorCode::InvalidParam, "entrywise norm needs p >= 1");
  }
  const GraphMark one[] = {g};
  return RepresentationPanel(one, rep).norm(0, norm);
}

double differentiation_ratio(const GraphMark& g1, const GraphMark& g2,
                             const RepresentationSpec& rep, PaddingPolicy padding) {
  const GraphMark pair[] = {g1, g2};
  return RepresentationPanel(pair, rep, padding).differentiation(0, 1);
}

}  // namespace graphmark
