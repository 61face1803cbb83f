#include "graphmark/simulate.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "graphmark/error.hpp"
#include "graphmark/rng.hpp"

namespace graphmark {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidParam, std::string(name) + " must be positive and finite");
  }
}

Point uniform_point(Engine& eng, const Window& w) {
  const double x = w.xmin() + w.width() * uniform01(eng);
  const double y = w.ymin() + w.height() * uniform01(eng);
  return {x, y};
}

// Number of points in x (skipping index `skip`) within distance r of u.
int close_count(const std::vector<Point>& x, const Point& u, double r, std::size_t skip) {
  const double r2 = r * r;
  int c = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i == skip) continue;
    const double dx = x[i].x - u.x;
    const double dy = x[i].y - u.y;
    if (dx * dx + dy * dy <= r2) ++c;
  }
  return c;
}

}  // namespace

std::vector<Point> sim_poisson(double lambda, const Window& w, std::uint64_t seed,
                               std::optional<std::size_t> fixed_n) {
  require_positive(lambda, "lambda");
  Engine eng(seed);
  const std::size_t n = fixed_n ? *fixed_n : poisson(eng, lambda * w.area());
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(uniform_point(eng, w));
  return pts;
}

std::vector<Point> sim_strauss(double beta, double gamma, double radius, const Window& w,
                               std::uint64_t seed, int n_iter) {
  require_positive(beta, "beta");
  require_positive(radius, "radius");
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(ErrorCode::InvalidParam, "gamma must lie in [0, 1]");
  }
  if (n_iter < 0) throw Error(ErrorCode::InvalidParam, "n_iter must be nonnegative");
  Engine eng(seed);
  const double mass = beta * w.area();
  std::vector<Point> x;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  for (int it = 0; it < n_iter; ++it) {
    const double move = uniform01(eng);
    if (move < 0.35) {
      const Point u = uniform_point(eng, w);
      const int t = close_count(x, u, radius, kNone);
      const double ratio = mass * std::pow(gamma, t) / static_cast<double>(x.size() + 1);
      if (uniform01(eng) < ratio) x.push_back(u);
    } else if (move < 0.70) {
      if (x.empty()) continue;
      const std::size_t i = uniform_below(eng, x.size());
      const int t = close_count(x, x[i], radius, i);
      const double ratio = static_cast<double>(x.size()) / (mass * std::pow(gamma, t));
      if (uniform01(eng) < ratio) {
        x[i] = x.back();
        x.pop_back();
      }
    } else {
      if (x.empty()) continue;
      const std::size_t i = uniform_below(eng, x.size());
      const Point u = uniform_point(eng, w);
      const int t_new = close_count(x, u, radius, i);
      const int t_old = close_count(x, x[i], radius, i);
      const double ratio =
          t_new == t_old ? 1.0 : std::pow(gamma, t_new) / std::pow(gamma, t_old);
      if (uniform01(eng) < ratio) x[i] = u;
    }
  }
  return x;
}

ThomasRealization sim_thomas_realization(double lambda_p, double sigma, double mu,
                                         const Window& w, std::uint64_t seed) {
  require_positive(lambda_p, "lambda_p");
  require_positive(sigma, "sigma");
  require_positive(mu, "mu");
  const double pad = 4.0 * sigma;
  const Window big(w.xmin() - pad, w.xmax() + pad, w.ymin() - pad, w.ymax() + pad);
  Engine eng(seed);
  ThomasRealization out;
  const std::uint64_t np = poisson(eng, lambda_p * big.area());
  for (std::uint64_t k = 0; k < np; ++k) out.parents.push_back(uniform_point(eng, big));
  for (std::size_t k = 0; k < out.parents.size(); ++k) {
    const std::uint64_t m = poisson(eng, mu);
    for (std::uint64_t c = 0; c < m; ++c) {
      const double dx = sigma * standard_normal(eng);
      const double dy = sigma * standard_normal(eng);
      const Point q{out.parents[k].x + dx, out.parents[k].y + dy};
      if (w.contains(q)) {
        out.points.push_back(q);
        out.parent_of.push_back(k);
      }
    }
  }
  return out;
}

std::vector<Point> sim_thomas(double lambda_p, double sigma, double mu, const Window& w,
                              std::uint64_t seed) {
  return sim_thomas_realization(lambda_p, sigma, mu, w, seed).points;
}

namespace {

GraphMark er_graph(Engine& eng, int n, double p) {
  Matrix a = Matrix::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (uniform01(eng) < p) a(s, t) = a(t, s) = 1.0;
    }
  }
  return GraphMark(std::move(a));
}

}  // namespace

std::vector<GraphMark> gen_er_marks(std::span<const Point> points, int n_vertices, ErMode mode,
                                    const Window& w, std::uint64_t seed) {
  if (n_vertices < 1) throw Error(ErrorCode::InvalidParam, "graphs need at least one vertex");
  std::vector<double> probs(points.size());
  if (const auto* c = std::get_if<ErConstant>(&mode)) {
    if (!(c->p > 0.0 && c->p < 1.0)) throw Error(ErrorCode::InvalidP, "p must lie in (0, 1)");
    std::fill(probs.begin(), probs.end(), c->p);
  } else {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!w.contains(points[i])) {
        throw Error(ErrorCode::PointOutsideWindow, "point " + std::to_string(i) + " outside window");
      }
      const double b = boundary_distance(w, points[i]);
      if (!(b > 0.0 && b < 1.0)) {
        throw Error(ErrorCode::BoundaryDistanceOutOfRange,
                    "boundary distance of point " + std::to_string(i) + " is not in (0, 1)");
      }
      probs[i] = b;
    }
  }
  Engine eng(seed);
  std::vector<GraphMark> marks;
  marks.reserve(points.size());
  for (double p : probs) marks.push_back(er_graph(eng, n_vertices, p));
  return marks;
}

GraphMark degree_weight_mark(const GraphMark& g) {
  if (!g.is_binary()) throw Error(ErrorCode::NotBinary, "degree weighting needs a binary graph");
  const Vector deg = degrees(g);
  Matrix a = g.adjacency();
  for (int s = 0; s < a.rows(); ++s) {
    for (int t = 0; t < a.cols(); ++t) {
      if (a(s, t) != 0.0) a(s, t) = 0.5 * (deg(s) + deg(t));
    }
  }
  return GraphMark(std::move(a));
}

std::vector<GraphMark> degree_weight_marks(std::span<const GraphMark> marks) {
  std::vector<GraphMark> out;
  out.reserve(marks.size());
  for (const auto& g : marks) out.push_back(degree_weight_mark(g));
  return out;
}

std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Engine eng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = uniform_below(eng, i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

MarkedPointPattern random_relabel(const MarkedPointPattern& p, std::uint64_t seed) {
  if (p.size() < 2) throw Error(ErrorCode::TooFewPoints, "relabelling needs at least two points");
  return p.relabeled(random_permutation(p.size(), seed));
}

void validate(const SimulationConfig& cfg) {
  if (const auto* g = std::get_if<PoissonGround>(&cfg.ground)) {
    require_positive(g->lambda, "lambda");
  } else if (const auto* g = std::get_if<StraussGround>(&cfg.ground)) {
    require_positive(g->beta, "beta");
    require_positive(g->radius, "radius");
    if (!(g->gamma >= 0.0 && g->gamma <= 1.0)) {
      throw Error(ErrorCode::InvalidParam, "gamma must lie in [0, 1]");
    }
    if (g->n_iter < 0) throw Error(ErrorCode::InvalidParam, "n_iter must be nonnegative");
  } else if (const auto* g = std::get_if<ThomasGround>(&cfg.ground)) {
    require_positive(g->lambda_p, "lambda_p");
    require_positive(g->sigma, "sigma");
    require_positive(g->mu, "mu");
  }
  if (const auto* m = std::get_if<ErConstMarks>(&cfg.marks)) {
    if (m->n_vertices < 2) throw Error(ErrorCode::InvalidParam, "n_vertices must be at least 2");
    if (!(m->p > 0.0 && m->p < 1.0)) throw Error(ErrorCode::InvalidP, "p must lie in (0, 1)");
  } else if (const auto* m = std::get_if<ErBoundaryMarks>(&cfg.marks)) {
    if (m->n_vertices < 2) throw Error(ErrorCode::InvalidParam, "n_vertices must be at least 2");
  }
}

MarkedPointPattern simulate_pattern(const SimulationConfig& cfg) {
  validate(cfg);
  const std::uint64_t ground_seed = derive_seed(cfg.seed, 0);
  const std::uint64_t mark_seed = derive_seed(cfg.seed, 1);
  std::vector<Point> pts;
  if (const auto* g = std::get_if<PoissonGround>(&cfg.ground)) {
    pts = sim_poisson(g->lambda, cfg.window, ground_seed, g->fixed_n);
  } else if (const auto* g = std::get_if<StraussGround>(&cfg.ground)) {
    pts = sim_strauss(g->beta, g->gamma, g->radius, cfg.window, ground_seed, g->n_iter);
  } else {
    const auto& t = std::get<ThomasGround>(cfg.ground);
    pts = sim_thomas(t.lambda_p, t.sigma, t.mu, cfg.window, ground_seed);
  }
  std::vector<GraphMark> marks;
  if (const auto* m = std::get_if<ErConstMarks>(&cfg.marks)) {
    marks = gen_er_marks(pts, m->n_vertices, ErConstant{m->p}, cfg.window, mark_seed);
  } else if (const auto* m = std::get_if<ErBoundaryMarks>(&cfg.marks)) {
    marks = gen_er_marks(pts, m->n_vertices, ErBoundary{}, cfg.window, mark_seed);
  } else {
    marks.assign(pts.size(), GraphMark::empty(1));
  }
  if (cfg.adjacency == AdjacencyMode::degree_weighted) marks = degree_weight_marks(marks);
  return MarkedPointPattern(cfg.window, std::move(pts), std::move(marks));
}

}  // namespace graphmark
