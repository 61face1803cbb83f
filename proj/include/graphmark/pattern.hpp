#pragma once

#include <cstddef>
#include <vector>

#include "graphmark/graph.hpp"

namespace graphmark {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned rectangular observation window.
class Window {
 public:
  Window(double xmin, double xmax, double ymin, double ymax);
  static Window unit_square() { return Window(0.0, 1.0, 0.0, 1.0); }

  double xmin() const { return xmin_; }
  double xmax() const { return xmax_; }
  double ymin() const { return ymin_; }
  double ymax() const { return ymax_; }
  double width() const { return xmax_ - xmin_; }
  double height() const { return ymax_ - ymin_; }
  double area() const { return width() * height(); }
  double min_side() const;
  bool contains(const Point& p) const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  double xmin_;
  double xmax_;
  double ymin_;
  double ymax_;
};

/// Points in a window, each carrying a graph mark.
class MarkedPointPattern {
 public:
  /// Rejects points outside the (closed) window and coordinates that
  /// coincide within 1e-12.
  MarkedPointPattern(Window window, std::vector<Point> points, std::vector<GraphMark> marks);

  const Window& window() const { return window_; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<GraphMark>& marks() const { return marks_; }
  std::size_t size() const { return points_.size(); }

  /// Same locations, marks reassigned: point i gets marks()[labels[i]].
  MarkedPointPattern relabeled(const std::vector<std::size_t>& labels) const;

 private:
  Window window_;
  std::vector<Point> points_;
  std::vector<GraphMark> marks_;
};

/// n / area. Throws EmptyPattern.
double intensity_hat(const MarkedPointPattern& p);

/// Euclidean interpoint distances. Throws TooFewPoints for n < 2.
Matrix pairwise_distances(const MarkedPointPattern& p);

double distance(const Point& a, const Point& b);

/// Distance from a location to the nearest window edge.
double boundary_distance(const Window& w, const Point& x);
double boundary_distance(const MarkedPointPattern& p, std::size_t i);

/// area(W) / area(W intersect (W + (x_j - x_i))). Throws PointOutsideWindow.
double translation_edge_factor(const Point& xi, const Point& xj, const Window& w);

}  // namespace graphmark
