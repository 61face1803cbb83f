#include <cmath>
#include <numbers>

#include "doctest.h"
#include "graphmark/error.hpp"
#include "graphmark/metrics.hpp"
#include "graphmark/spectral_density.hpp"
#include "support.hpp"

using namespace graphmark;
using gmtest::k3;
using gmtest::p3;

namespace {

bool throws_code(ErrorCode code, auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

MetricSpec spec_of(MetricKind k) {
  MetricSpec s;
  s.kind = k;
  return s;
}

double dist(MetricKind k, const GraphMark& a, const GraphMark& b) {
  return graph_distance(a, b, spec_of(k));
}

bool needs_connected(MetricKind k) {
  return k == MetricKind::spanning_tree || k == MetricKind::matrix;
}

GraphMark random_for(MetricKind k, Engine& eng, int n) {
  while (true) {
    auto g = gmtest::random_binary_graph(eng, n, 0.5);
    if (!needs_connected(k) || is_connected(g)) return g;
  }
}

}  // namespace

TEST_CASE("metric names round trip") {
  for (MetricKind k : kAllMetricKinds) CHECK(parse_metric_kind(to_string(k)) == k);
  CHECK(!parse_metric_kind("nope"));
  CHECK(describe(spec_of(MetricKind::ipsen_mikhailov)) == "ipsen_mikhailov(xi=auto)");
}

TEST_CASE("hand-derived distances between K3 and P3") {
  CHECK(dist(MetricKind::hamming, k3(), GraphMark::empty(3)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(dist(MetricKind::hamming, k3(), p3()) - 1.0 / 3.0) < 1e-9);
  CHECK(std::abs(dist(MetricKind::jaccard, k3(), p3()) - 1.0) < 1e-9);
  CHECK(std::abs(dist(MetricKind::frobenius, k3(), p3()) - std::sqrt(2.0)) < 1e-9);
  CHECK(std::abs(dist(MetricKind::matrix, k3(), p3()) - 2.0) < 1e-9);
  CHECK(std::abs(dist(MetricKind::laplacian_spectral, k3(), p3()) - 2.0) < 1e-9);
  const double r2 = std::sqrt(2.0);
  const double adj = std::sqrt((2.0 - r2) * (2.0 - r2) + 1.0 + (r2 - 1.0) * (r2 - 1.0));
  CHECK(std::abs(dist(MetricKind::adjacency_spectral, k3(), p3()) - adj) < 1e-9);
  CHECK(adj == doctest::Approx(1.23069).epsilon(1e-4));
  CHECK(std::abs(dist(MetricKind::spanning_tree, k3(), p3()) - std::log(3.0)) < 1e-9);

  // Normalized Laplacian spectra (0, 1.5, 1.5) and (0, 1, 2).
  const double nl = std::sqrt(0.25 + 0.25);
  CHECK(std::abs(dist(MetricKind::normalized_laplacian_spectral, k3(), p3()) - nl) < 1e-9);
}

TEST_CASE("matrix distance with effective resistance") {
  MetricSpec s = spec_of(MetricKind::matrix);
  s.delta = DeltaKind::effective_resistance;
  // K3: all 2/3; P3: 1, 1, 2. Entrywise L1 over both triangles.
  const double want = 2.0 * ((1.0 - 2.0 / 3.0) * 2.0 + (2.0 - 2.0 / 3.0));
  CHECK(std::abs(graph_distance(k3(), p3(), s) - want) < 1e-9);
}

TEST_CASE("matusita against a direct formula") {
  MetricSpec s = spec_of(MetricKind::matusita);
  s.eps = 0.1;
  const Matrix w1 = fbp_matrix(k3(), 0.1);
  const Matrix w2 = fbp_matrix(p3(), 0.1);
  double acc = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double d = std::sqrt(w1(a, b)) - std::sqrt(w2(a, b));
      acc += d * d;
    }
  CHECK(std::abs(graph_distance(k3(), p3(), s) - std::sqrt(acc)) < 1e-12);
  s.eps = 0.5;
  CHECK(throws_code(ErrorCode::InvalidEps, [&] { graph_distance(k3(), p3(), s); }));
}

TEST_CASE("ipsen-mikhailov calibration and him") {
  for (int n : {5, 10, 25}) {
    const double d = dist(MetricKind::ipsen_mikhailov, GraphMark::empty(n), GraphMark::complete(n));
    CHECK(std::abs(d - 1.0) < 1e-6);
  }
  MetricSpec im = spec_of(MetricKind::ipsen_mikhailov);
  im.xi = 0.3;
  MetricSpec him = spec_of(MetricKind::him);
  him.xi = 0.3;
  const double i = graph_distance(k3(), p3(), im);
  const double h = dist(MetricKind::hamming, k3(), p3());
  CHECK(std::abs(graph_distance(k3(), p3(), him) - std::sqrt(i * i + h * h) / std::sqrt(1.3)) <
        1e-12);
  CHECK(dist(MetricKind::him, k3(), k3()) == 0.0);
  im.xi = -1.0;
  CHECK(throws_code(ErrorCode::InvalidParam, [&] { graph_distance(k3(), p3(), im); }));
}

TEST_CASE("ipsen-mikhailov against an independent quadrature") {
  // Straight trapezoid on [0, 200] with a fine grid plus the analytic tail.
  const double xi = 0.4;
  auto density = [&](const GraphMark& g) {
    const auto f = vibrational_frequencies(g);
    double norm = 0.0;
    for (double t : f) norm += std::numbers::pi / 2 + std::atan(t / xi);
    return [f, norm, xi](double th) {
      double s = 0.0;
      for (double t : f) s += xi / ((th - t) * (th - t) + xi * xi);
      return s / norm;
    };
  };
  const auto g1 = GraphMark::path(5);
  const auto g2 = GraphMark::complete(5);
  auto r1 = density(g1);
  auto r2 = density(g2);
  const int m = 400000;
  const double hi = 200.0, h = hi / m;
  double acc = 0.0;
  for (int k = 0; k <= m; ++k) {
    const double th = k * h;
    const double d = r1(th) - r2(th);
    acc += (k == 0 || k == m ? 0.5 : 1.0) * h * d * d;
  }
  MetricSpec s = spec_of(MetricKind::ipsen_mikhailov);
  s.xi = xi;
  CHECK(graph_distance(g1, g2, s) == doctest::Approx(std::sqrt(acc)).epsilon(1e-4));
}

TEST_CASE("spectral densities integrate to one") {
  Engine eng(17);
  for (int rep = 0; rep < 50; ++rep) {
    const auto g = gmtest::random_weighted_graph(eng, 3 + rep % 20, 0.5);
    const auto f = vibrational_frequencies(g);
    for (double xi : {0.05, 0.5, 2.0}) {
      double mx = 0.0;
      for (double t : f) mx = std::max(mx, t);
      HalfLineGrid grid(half_line_scale(xi, mx));
      const auto d = lorentz_density(f, xi, grid);
      CHECK(std::abs(lorentz_density_integral(d, grid) - 1.0) < 1e-4);
    }
    const auto ev = spectrum(g.adjacency(), SpectrumOrder::ascending).eigenvalues;
    LineGrid line(ev.front() - 2.5, ev.back() + 2.5);
    CHECK(std::abs(density_integral(gaussian_spectral_density(ev, 0.5, line), line) - 1.0) < 1e-4);
  }
}

TEST_CASE("eigenspectrum distance") {
  // Same eigenvalue multiset: P3 relabelled.
  std::vector<std::pair<int, int>> e{{0, 2}, {2, 1}};
  const auto q = GraphMark::from_edges(3, e);
  CHECK(dist(MetricKind::eigenspectrum, p3(), q) < 1e-12);
  CHECK(dist(MetricKind::eigenspectrum, k3(), p3()) > 0.1);
  CHECK(dist(MetricKind::eigenspectrum, k3(), p3()) <= 2.0);
}

TEST_CASE("metric axioms on random graphs") {
  Engine eng(99);
  for (MetricKind k : kAllMetricKinds) {
    CAPTURE(to_string(k));
    for (int rep = 0; rep < 60; ++rep) {
      const int n1 = 3 + static_cast<int>(uniform_below(eng, 6));
      const int n2 = 3 + static_cast<int>(uniform_below(eng, 6));
      const auto a = random_for(k, eng, n1);
      const auto b = random_for(k, eng, n2);
      if (k == MetricKind::matrix && n1 != n2) continue;  // padding disconnects
      if (k == MetricKind::spanning_tree || k == MetricKind::matrix) {
        if (n1 != n2) continue;
      }
      const double dab = dist(k, a, b);
      const double dba = dist(k, b, a);
      CHECK(std::abs(dist(k, a, a)) < 1e-10);
      CHECK(dab >= 0.0);
      CHECK(std::abs(dab - dba) < 1e-10);
    }
  }
}

TEST_CASE("triangle inequality for entrywise metrics") {
  Engine eng(5);
  for (MetricKind k : {MetricKind::hamming, MetricKind::jaccard, MetricKind::frobenius}) {
    for (int rep = 0; rep < 300; ++rep) {
      const int n = 3 + static_cast<int>(uniform_below(eng, 5));
      const auto a = gmtest::random_binary_graph(eng, n, 0.5);
      const auto b = gmtest::random_binary_graph(eng, n, 0.5);
      const auto c = gmtest::random_binary_graph(eng, n, 0.5);
      CHECK(dist(k, a, c) <= dist(k, a, b) + dist(k, b, c) + 1e-10);
    }
  }
}

TEST_CASE("padding leaves entrywise quantities unchanged") {
  Engine eng(6);
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = gmtest::random_weighted_graph(eng, 4, 0.6);
    const auto b = gmtest::random_weighted_graph(eng, 4, 0.6);
    const auto pa = pad_to_order(a, 7);
    const auto pb = pad_to_order(b, 7);
    CHECK(dist(MetricKind::hamming, pa, pb) * 42.0 ==
          doctest::Approx(dist(MetricKind::hamming, a, b) * 12.0));
    CHECK(dist(MetricKind::frobenius, pa, pb) == doctest::Approx(dist(MetricKind::frobenius, a, b)));
    CHECK(graph_inner_product(pa, pb, {}) == doctest::Approx(graph_inner_product(a, b, {})));
    // Auto padding of mismatched orders equals explicit padding.
    CHECK(dist(MetricKind::frobenius, a, pb) == dist(MetricKind::frobenius, pa, pb));
  }
}

TEST_CASE("padding policy and connectivity errors") {
  MetricSpec s = spec_of(MetricKind::hamming);
  s.padding = PaddingPolicy::require_equal_order;
  CHECK(throws_code(ErrorCode::OrderMismatch,
                    [&] { graph_distance(k3(), GraphMark::complete(4), s); }));
  CHECK(throws_code(ErrorCode::DisconnectedForSpanningTree, [] {
    graph_distance(k3(), GraphMark::empty(3), spec_of(MetricKind::spanning_tree));
  }));
  CHECK(throws_code(ErrorCode::DisconnectedForDelta, [] {
    graph_distance(k3(), GraphMark::empty(3), spec_of(MetricKind::matrix));
  }));
  MetricSpec e = spec_of(MetricKind::eigenspectrum);
  e.sigma = 0.0;
  CHECK(throws_code(ErrorCode::InvalidParam, [&] { graph_distance(k3(), p3(), e); }));
}

TEST_CASE("inner products, norms and differentiation") {
  const RepresentationSpec adj;
  CHECK(graph_inner_product(k3(), k3(), adj) == 6.0);
  CHECK(graph_inner_product(k3(), p3(), adj) == 4.0);
  CHECK(graph_inner_product(k3(), GraphMark::empty(3), adj) == 0.0);
  CHECK(throws_code(ErrorCode::OrderMismatch, [&] {
    graph_inner_product(k3(), GraphMark::complete(4), adj, PaddingPolicy::require_equal_order);
  }));

  CHECK(graph_norm(k3(), adj, {}) == doctest::Approx(std::sqrt(6.0)));
  CHECK(graph_norm(p3(), adj, {NormKind::entrywise_p, 1.0}) == 4.0);
  CHECK(graph_norm(GraphMark::empty(4), adj, {NormKind::entrywise_p, 3.0}) == 0.0);
  CHECK(graph_norm(GraphMark::empty(4), adj, {}) == 0.0);
  CHECK(throws_code(ErrorCode::InvalidParam,
                    [&] { graph_norm(k3(), adj, {NormKind::entrywise_p, 0.5}); }));
  // Weighted entries are squared.
  Matrix w = Matrix::Zero(2, 2);
  w(0, 1) = w(1, 0) = 3.0;
  CHECK(graph_norm(GraphMark(w), adj, {}) == doctest::Approx(std::sqrt(18.0)));

  CHECK(differentiation_ratio(p3(), p3(), adj) == 0.0);
  CHECK(differentiation_ratio(k3(), GraphMark::empty(3), adj) == 1.0);
  CHECK(differentiation_ratio(k3(), p3(), adj) == doctest::Approx(1.0 / 3.0));
  CHECK(differentiation_ratio(GraphMark::empty(3), GraphMark::empty(3), adj) == 0.0);
  CHECK(throws_code(ErrorCode::NegativeEntries, [&] {
    differentiation_ratio(k3(), p3(), RepresentationSpec{MatrixRep::laplacian, {}});
  }));

  // The fbp representation of a single vertex is [1].
  const RepresentationSpec fbp{MatrixRep::fbp, {}};
  CHECK(graph_inner_product(GraphMark::empty(1), GraphMark::empty(1), fbp) == 1.0);
}

TEST_CASE("metric panel agrees with pairwise distances") {
  Engine eng(12);
  std::vector<GraphMark> marks;
  for (int k = 0; k < 8; ++k) marks.push_back(gmtest::random_binary_graph(eng, 5, 0.5));
  for (MetricKind kind : {MetricKind::hamming, MetricKind::jaccard, MetricKind::frobenius,
                          MetricKind::adjacency_spectral, MetricKind::laplacian_spectral}) {
    MetricPanel panel(marks, spec_of(kind), 2);
    for (std::size_t i = 0; i < marks.size(); ++i)
      for (std::size_t j = 0; j < marks.size(); ++j)
        CHECK(panel.distance(i, j) == doctest::Approx(dist(kind, marks[i], marks[j])));
  }
}
