#include "graphmark/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "graphmark/error.hpp"

namespace graphmark {

GraphMark::GraphMark(Matrix adjacency) : adjacency_(std::move(adjacency)) {
  const Eigen::Index n = adjacency_.rows();
  if (n < 1 || adjacency_.cols() != n) {
    throw Error(ErrorCode::InvalidGraph, "adjacency must be a nonempty square matrix");
  }
  for (Eigen::Index s = 0; s < n; ++s) {
    if (adjacency_(s, s) != 0.0) {
      throw Error(ErrorCode::InvalidGraph, "nonzero diagonal at vertex " + std::to_string(s));
    }
    for (Eigen::Index t = s + 1; t < n; ++t) {
      const double a = adjacency_(s, t);
      if (a != adjacency_(t, s)) {
        throw Error(ErrorCode::InvalidGraph, "adjacency is not symmetric at (" +
                                                 std::to_string(s) + "," + std::to_string(t) +
                                                 ")");
      }
      if (!std::isfinite(a) || a < 0.0) {
        throw Error(ErrorCode::InvalidGraph, "edge weights must be finite and nonnegative");
      }
    }
  }
}

GraphMark GraphMark::empty(int order) {
  if (order < 1) throw Error(ErrorCode::InvalidGraph, "order must be positive");
  return GraphMark(Matrix::Zero(order, order));
}

GraphMark GraphMark::complete(int order) {
  if (order < 1) throw Error(ErrorCode::InvalidGraph, "order must be positive");
  Matrix a = Matrix::Ones(order, order);
  a.diagonal().setZero();
  return GraphMark(std::move(a));
}

GraphMark GraphMark::path(int order) {
  if (order < 1) throw Error(ErrorCode::InvalidGraph, "order must be positive");
  Matrix a = Matrix::Zero(order, order);
  for (int s = 0; s + 1 < order; ++s) a(s, s + 1) = a(s + 1, s) = 1.0;
  return GraphMark(std::move(a));
}

GraphMark GraphMark::from_edges(int order, std::span<const std::pair<int, int>> edges) {
  if (order < 1) throw Error(ErrorCode::InvalidGraph, "order must be positive");
  Matrix a = Matrix::Zero(order, order);
  for (auto [s, t] : edges) {
    if (s < 0 || t < 0 || s >= order || t >= order || s == t) {
      throw Error(ErrorCode::InvalidEdge,
                  "edge (" + std::to_string(s) + "," + std::to_string(t) + ") out of range");
    }
    a(s, t) = a(t, s) = 1.0;
  }
  return GraphMark(std::move(a));
}

bool GraphMark::is_binary() const {
  return (adjacency_.array() == 0.0 || adjacency_.array() == 1.0).all();
}

int GraphMark::edge_count() const {
  return static_cast<int>((adjacency_.array() != 0.0).count() / 2);
}

double GraphMark::max_degree() const { return adjacency_.rowwise().sum().maxCoeff(); }

GraphMark GraphMark::scaled(double factor) const { return GraphMark(adjacency_ * factor); }

Vector degrees(const GraphMark& g) { return g.adjacency().rowwise().sum(); }

Matrix degree_matrix(const GraphMark& g) { return degrees(g).asDiagonal(); }

Matrix laplacian(const GraphMark& g) {
  Matrix l = -g.adjacency();
  l.diagonal() = degrees(g);
  return l;
}

Matrix normalized_laplacian(const GraphMark& g) {
  const Vector deg = degrees(g);
  Vector inv_sqrt(deg.size());
  for (Eigen::Index s = 0; s < deg.size(); ++s) {
    inv_sqrt(s) = deg(s) > 0.0 ? 1.0 / std::sqrt(deg(s)) : 0.0;
  }
  return inv_sqrt.asDiagonal() * laplacian(g) * inv_sqrt.asDiagonal();
}

double fbp_default_eps(double max_degree) { return 0.5 / (2.0 + max_degree); }

Matrix fbp_matrix(const GraphMark& g, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::InvalidEps, "eps must be positive");
  }
  const double bound = 1.0 / (1.0 + g.max_degree());
  if (eps >= bound) {
    throw Error(ErrorCode::InvalidEps, "eps " + std::to_string(eps) +
                                           " is not below 1/(1+max degree) = " +
                                           std::to_string(bound));
  }
  const int n = g.order();
  Matrix system = Matrix::Identity(n, n) - eps * g.adjacency();
  system.diagonal() += eps * eps * degrees(g);
  Eigen::FullPivLU<Matrix> lu(system);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularSystem, "I + eps^2 D - eps A");
  Matrix w = lu.inverse();
  if (!w.allFinite()) throw Error(ErrorCode::SingularSystem, "non-finite FBP inverse");
  return 0.5 * (w + w.transpose());
}

Matrix shortest_path_matrix(const GraphMark& g) {
  const int n = g.order();
  const double inf = std::numeric_limits<double>::infinity();
  const Matrix& a = g.adjacency();
  Matrix m(n, n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) m(s, t) = s == t ? 0.0 : (a(s, t) > 0.0 ? a(s, t) : inf);
  }
  // Floyd-Warshall; marks are small.
  for (int k = 0; k < n; ++k) {
    for (int s = 0; s < n; ++s) {
      const double via = m(s, k);
      if (via == inf) continue;
      for (int t = 0; t < n; ++t) {
        const double cand = via + m(k, t);
        if (cand < m(s, t)) m(s, t) = cand;
      }
    }
  }
  return 0.5 * (m + m.transpose());
}

bool is_connected(const GraphMark& g) {
  const int n = g.order();
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int s = frontier.front();
    frontier.pop();
    for (int t = 0; t < n; ++t) {
      if (!seen[t] && g.adjacency()(s, t) > 0.0) {
        seen[t] = 1;
        ++reached;
        frontier.push(t);
      }
    }
  }
  return reached == n;
}

Matrix effective_resistance_matrix(const GraphMark& g) {
  if (!is_connected(g)) {
    throw Error(ErrorCode::DisconnectedGraph, "effective resistance needs a connected graph");
  }
  const int n = g.order();
  // For connected graphs L+ = (L + J/n)^{-1} - J/n.
  const Matrix j = Matrix::Constant(n, n, 1.0 / n);
  const Matrix pinv = (laplacian(g) + j).ldlt().solve(Matrix::Identity(n, n)) - j;
  Matrix r(n, n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      r(s, t) = s == t ? 0.0 : pinv(s, s) + pinv(t, t) - 2.0 * pinv(s, t);
    }
  }
  return 0.5 * (r + r.transpose());
}

SymmetricSpectrum spectrum(const Matrix& m, SpectrumOrder order) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSymmetric, "matrix is not square");
  SymmetricSpectrum out;
  out.order = order;
  if (m.rows() == 0) return out;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::NotSymmetric, "matrix asymmetry exceeds 1e-12 relative");
  }
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  const Vector& ev = solver.eigenvalues();  // ascending
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  if (order == SpectrumOrder::descending) {
    std::reverse(out.eigenvalues.begin(), out.eigenvalues.end());
  }
  return out;
}

GraphMark pad_to_order(const GraphMark& g, int target) {
  if (target < g.order()) {
    throw Error(ErrorCode::TargetTooSmall, "cannot pad order " + std::to_string(g.order()) +
                                               " down to " + std::to_string(target));
  }
  if (target == g.order()) return g;
  Matrix a = Matrix::Zero(target, target);
  a.topLeftCorner(g.order(), g.order()) = g.adjacency();
  return GraphMark(std::move(a));
}

namespace {

constexpr double kDisconnectedTol = 1e-9;

}  // namespace

double log_spanning_tree_count(const GraphMark& g) {
  const int n = g.order();
  if (n == 1) return 0.0;
  const auto spec = spectrum(laplacian(g), SpectrumOrder::ascending);
  if (spec.eigenvalues[1] < kDisconnectedTol) return -std::numeric_limits<double>::infinity();
  double log_t = -std::log(static_cast<double>(n));
  for (int l = 1; l < n; ++l) log_t += std::log(spec.eigenvalues[l]);
  return log_t;
}

double spanning_tree_count(const GraphMark& g) {
  const double log_t = log_spanning_tree_count(g);
  return std::isinf(log_t) ? 0.0 : std::exp(log_t);
}

GraphMark weighted_mark_from_segments(int order, std::span<const Segment> segments,
                                      SegmentWeight scheme) {
  if (order < 1) throw Error(ErrorCode::InvalidGraph, "order must be positive");
  Matrix a = Matrix::Zero(order, order);
  std::vector<char> used(static_cast<std::size_t>(order) * order, 0);
  for (const Segment& seg : segments) {
    if (seg.s < 0 || seg.t < 0 || seg.s >= order || seg.t >= order || seg.s == seg.t ||
        used[static_cast<std::size_t>(seg.s) * order + seg.t]) {
      throw Error(ErrorCode::InvalidEdge, "segment (" + std::to_string(seg.s) + "," +
                                              std::to_string(seg.t) + ") is invalid");
    }
    if (!(seg.length >= 0.0) || !std::isfinite(seg.length)) {
      throw Error(ErrorCode::NegativeLength, "segment length must be finite and >= 0");
    }
    if (!(seg.angle >= 0.0 && seg.angle < 2.0 * std::numbers::pi)) {
      throw Error(ErrorCode::InvalidParam, "segment angle must lie in [0, 2pi)");
    }
    double w = 0.0;
    switch (scheme) {
      case SegmentWeight::length: w = seg.length; break;
      case SegmentWeight::angle: w = seg.angle; break;
      case SegmentWeight::length_plus_angle: w = seg.length + seg.angle; break;
    }
    a(seg.s, seg.t) = a(seg.t, seg.s) = w;
    used[static_cast<std::size_t>(seg.s) * order + seg.t] = 1;
    used[static_cast<std::size_t>(seg.t) * order + seg.s] = 1;
  }
  return GraphMark(std::move(a));
}

}  // namespace graphmark
