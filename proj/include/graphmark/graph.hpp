#pragma once

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

namespace graphmark {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A finite undirected graph attached to a point, stored as its adjacency
/// matrix. Entries are nonnegative edge weights (1 for binary marks), the
/// matrix is exactly symmetric and the diagonal is zero.
class GraphMark {
 public:
  /// Validates the invariants above; throws Error(InvalidGraph) otherwise.
  explicit GraphMark(Matrix adjacency);

  static GraphMark empty(int order);
  static GraphMark complete(int order);
  static GraphMark path(int order);
  /// Binary graph from 0-based vertex pairs.
  static GraphMark from_edges(int order, std::span<const std::pair<int, int>> edges);

  int order() const { return static_cast<int>(adjacency_.rows()); }
  const Matrix& adjacency() const { return adjacency_; }
  bool is_binary() const;
  int edge_count() const;
  double max_degree() const;

  GraphMark scaled(double factor) const;

  friend bool operator==(const GraphMark& a, const GraphMark& b) {
    return a.adjacency_.rows() == b.adjacency_.rows() && a.adjacency_ == b.adjacency_;
  }

 private:
  Matrix adjacency_;
};

/// Weighted degrees (row sums).
Vector degrees(const GraphMark& g);
Matrix degree_matrix(const GraphMark& g);

/// L = D - A.
Matrix laplacian(const GraphMark& g);

/// D^{-1/2} L D^{-1/2}; rows and columns of zero-degree vertices are zero.
Matrix normalized_laplacian(const GraphMark& g);

/// Default FBP coupling: half of 1 / (2 + max degree), safely inside the
/// invertibility bound 1 / (1 + max degree).
double fbp_default_eps(double max_degree);

/// Fast belief propagation matrix W = [I + eps^2 D - eps A]^{-1}.
/// Requires 0 < eps < 1 / (1 + max degree).
Matrix fbp_matrix(const GraphMark& g, double eps);

/// All-pairs shortest path lengths, edge weights taken as lengths.
/// Disconnected pairs are +infinity.
Matrix shortest_path_matrix(const GraphMark& g);

/// R_st = L+_ss + L+_tt - 2 L+_st. Throws DisconnectedGraph.
Matrix effective_resistance_matrix(const GraphMark& g);

enum class SpectrumOrder { descending, ascending };

struct SymmetricSpectrum {
  std::vector<double> eigenvalues;
  SpectrumOrder order = SpectrumOrder::ascending;
};

/// Eigenvalues of a symmetric matrix (symmetrized by averaging after a
/// 1e-12 relative symmetry check; throws NotSymmetric).
SymmetricSpectrum spectrum(const Matrix& m, SpectrumOrder order);

bool is_connected(const GraphMark& g);

/// Zero-extends the adjacency to target x target (artificial isolated nodes).
GraphMark pad_to_order(const GraphMark& g, int target);

/// Matrix-tree count |V|^{-1} prod of the nonzero Laplacian eigenvalues.
/// Returns 0 when the second-smallest eigenvalue is below 1e-9.
double spanning_tree_count(const GraphMark& g);

/// Same quantity on the log scale, -infinity when disconnected.
double log_spanning_tree_count(const GraphMark& g);

enum class SegmentWeight { length, angle, length_plus_angle };

struct Segment {
  int s = 0;
  int t = 0;
  double length = 0.0;
  double angle = 0.0;
};

/// Weighted adjacency of a traced tree: the segment length, the segment
/// angle, or their sum on each edge.
GraphMark weighted_mark_from_segments(int order, std::span<const Segment> segments,
                                      SegmentWeight scheme);

}  // namespace graphmark
