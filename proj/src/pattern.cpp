#include "graphmark/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "graphmark/error.hpp"

namespace graphmark {

namespace {

constexpr double kDuplicateTol = 1e-12;

}  // namespace

Window::Window(double xmin, double xmax, double ymin, double ymax)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax) {
  if (!std::isfinite(xmin) || !std::isfinite(xmax) || !std::isfinite(ymin) ||
      !std::isfinite(ymax) || !(xmax > xmin) || !(ymax > ymin)) {
    throw Error(ErrorCode::InvalidWindow, "window needs xmax > xmin and ymax > ymin");
  }
}

double Window::min_side() const { return std::min(width(), height()); }

bool Window::contains(const Point& p) const {
  return p.x >= xmin_ && p.x <= xmax_ && p.y >= ymin_ && p.y <= ymax_;
}

MarkedPointPattern::MarkedPointPattern(Window window, std::vector<Point> points,
                                       std::vector<GraphMark> marks)
    : window_(window), points_(std::move(points)), marks_(std::move(marks)) {
  if (points_.size() != marks_.size()) {
    throw Error(ErrorCode::InvalidPattern, "need exactly one mark per point");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y) ||
        !window_.contains(points_[i])) {
      throw Error(ErrorCode::PointOutsideWindow, "point " + std::to_string(i) +
                                                     " lies outside the window");
    }
  }
  // Duplicate check on x-sorted order.
  std::vector<std::size_t> order(points_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points_[a].x < points_[b].x; });
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const Point& p = points_[order[a]];
      const Point& q = points_[order[b]];
      if (q.x - p.x > kDuplicateTol) break;
      if (std::abs(q.y - p.y) <= kDuplicateTol) {
        throw Error(ErrorCode::InvalidPattern, "points " + std::to_string(order[a]) + " and " +
                                                   std::to_string(order[b]) + " coincide");
      }
    }
  }
}

MarkedPointPattern MarkedPointPattern::relabeled(const std::vector<std::size_t>& labels) const {
  if (labels.size() != marks_.size()) {
    throw Error(ErrorCode::InvalidPattern, "label vector has the wrong length");
  }
  std::vector<GraphMark> marks;
  marks.reserve(labels.size());
  for (std::size_t l : labels) marks.push_back(marks_.at(l));
  return MarkedPointPattern(window_, points_, std::move(marks));
}

double intensity_hat(const MarkedPointPattern& p) {
  if (p.size() == 0) throw Error(ErrorCode::EmptyPattern, "intensity of an empty pattern");
  return static_cast<double>(p.size()) / p.window().area();
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

Matrix pairwise_distances(const MarkedPointPattern& p) {
  const std::size_t n = p.size();
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "need at least two points");
  Matrix d = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = distance(p.points()[i], p.points()[j]);
    }
  }
  return d;
}

double boundary_distance(const Window& w, const Point& x) {
  return std::min({x.x - w.xmin(), w.xmax() - x.x, x.y - w.ymin(), w.ymax() - x.y});
}

double boundary_distance(const MarkedPointPattern& p, std::size_t i) {
  if (i >= p.size()) throw Error(ErrorCode::IndexOutOfRange, "point index out of range");
  return boundary_distance(p.window(), p.points()[i]);
}

double translation_edge_factor(const Point& xi, const Point& xj, const Window& w) {
  if (!w.contains(xi) || !w.contains(xj)) {
    throw Error(ErrorCode::PointOutsideWindow, "edge factor needs both points in the window");
  }
  const double overlap =
      (w.width() - std::abs(xj.x - xi.x)) * (w.height() - std::abs(xj.y - xi.y));
  return w.area() / overlap;
}

}  // namespace graphmark
