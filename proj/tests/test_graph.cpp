#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "graphmark/error.hpp"
#include "graphmark/graph.hpp"
#include "graphmark/graph_io.hpp"
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

}  // namespace

TEST_CASE("graph construction validates the adjacency") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK(throws_code(ErrorCode::InvalidGraph, [&] { GraphMark g(a); }));
  a(1, 0) = 1.0;
  a(0, 0) = 1.0;
  CHECK(throws_code(ErrorCode::InvalidGraph, [&] { GraphMark g(a); }));
  a(0, 0) = 0.0;
  a(0, 1) = a(1, 0) = -1.0;
  CHECK(throws_code(ErrorCode::InvalidGraph, [&] { GraphMark g(a); }));
  CHECK(throws_code(ErrorCode::InvalidGraph, [&] { GraphMark g(Matrix(0, 0)); }));
  CHECK(GraphMark::complete(4).edge_count() == 6);
  CHECK(GraphMark::path(4).edge_count() == 3);
  CHECK(GraphMark::empty(4).is_binary());
}

TEST_CASE("degree matrix") {
  CHECK(degree_matrix(k3()).diagonal() == Vector::Constant(3, 2.0));
  CHECK(degree_matrix(GraphMark::empty(3)).isZero());
  Vector want(3);
  want << 1, 2, 1;
  CHECK(degree_matrix(p3()).diagonal() == want);
  CHECK(degree_matrix(p3()).isDiagonal());
}

TEST_CASE("laplacian") {
  Matrix want(3, 3);
  want << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  CHECK(laplacian(k3()) == want);
  CHECK(laplacian(GraphMark::empty(3)).isZero());
  const auto s = spectrum(laplacian(p3()), SpectrumOrder::ascending).eigenvalues;
  CHECK(s[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("laplacian is positive semidefinite with zero row sums") {
  Engine eng(11);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 2 + static_cast<int>(uniform_below(eng, 9));
    const auto g = rep % 2 ? gmtest::random_binary_graph(eng, n, 0.4)
                           : gmtest::random_weighted_graph(eng, n, 0.4);
    const Matrix l = laplacian(g);
    CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(spectrum(l, SpectrumOrder::ascending).eigenvalues.front() >= -1e-10);
  }
}

TEST_CASE("normalized laplacian") {
  const Matrix nl = normalized_laplacian(k3());
  const Matrix want = Matrix::Identity(3, 3) - 0.5 * k3().adjacency();
  CHECK((nl - want).cwiseAbs().maxCoeff() < 1e-15);
  const auto s = spectrum(nl, SpectrumOrder::ascending).eigenvalues;
  CHECK(std::abs(s[0]) < 1e-12);
  CHECK(s[1] == doctest::Approx(1.5));
  CHECK(s[2] == doctest::Approx(1.5));

  std::vector<std::pair<int, int>> e{{0, 1}, {1, 2}};
  const auto g = GraphMark::from_edges(4, e);  // vertex 3 isolated
  const Matrix n4 = normalized_laplacian(g);
  CHECK(n4.row(3).isZero());
  CHECK(n4.col(3).isZero());

  Engine eng(5);
  for (int rep = 0; rep < 50; ++rep) {
    auto h = gmtest::random_binary_graph(eng, 6, 0.7);
    if (!is_connected(h)) continue;
    CHECK(std::abs(spectrum(normalized_laplacian(h), SpectrumOrder::ascending).eigenvalues[0]) <
          1e-10);
  }
}

TEST_CASE("fbp matrix") {
  const auto g = k3();
  const Matrix w0 = fbp_matrix(g, 1e-8);
  CHECK((w0 - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-6);
  const Matrix w = fbp_matrix(g, 0.1);
  CHECK((w - gmtest::fbp_series(g, 0.1)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(fbp_matrix(GraphMark::empty(4), 0.3) == Matrix::Identity(4, 4));
  CHECK(throws_code(ErrorCode::InvalidEps, [&] { fbp_matrix(g, 0.0); }));
  CHECK(throws_code(ErrorCode::InvalidEps, [&] { fbp_matrix(g, -0.1); }));
  CHECK(throws_code(ErrorCode::InvalidEps, [&] { fbp_matrix(g, 1.0 / 3.0); }));
  CHECK(fbp_default_eps(2.0) == doctest::Approx(0.125));
  CHECK(fbp_default_eps(2.0) < 1.0 / 3.0);
}

TEST_CASE("fbp inverse equals the power series on random graphs") {
  Engine eng(21);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(uniform_below(eng, 9));
    const auto g = gmtest::random_binary_graph(eng, n, 0.5);
    const double eps = std::min(0.1, 0.9 / (1.0 + g.max_degree()));
    CHECK((fbp_matrix(g, eps) - gmtest::fbp_series(g, eps)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("shortest paths") {
  const Matrix m = shortest_path_matrix(p3());
  CHECK(m(0, 2) == 2.0);
  CHECK(m(0, 1) == 1.0);
  CHECK(m(1, 2) == 1.0);
  const Matrix k = shortest_path_matrix(k3());
  CHECK(k == Matrix::Ones(3, 3) - Matrix::Identity(3, 3));
  std::vector<std::pair<int, int>> e{{0, 1}, {2, 3}};
  const Matrix two = shortest_path_matrix(GraphMark::from_edges(4, e));
  CHECK(std::isinf(two(0, 2)));
  CHECK(std::isinf(two(1, 3)));
  CHECK(two(2, 3) == 1.0);
}

TEST_CASE("effective resistance") {
  const Matrix r2 = effective_resistance_matrix(GraphMark::complete(2));
  CHECK(r2(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  const Matrix rk = effective_resistance_matrix(k3());
  for (int s = 0; s < 3; ++s) {
    CHECK(std::abs(rk(s, s)) < 1e-12);
    for (int t = 0; t < 3; ++t) {
      if (s != t) CHECK(rk(s, t) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }
  }
  CHECK(effective_resistance_matrix(p3())(0, 2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(throws_code(ErrorCode::DisconnectedGraph,
                    [] { effective_resistance_matrix(GraphMark::empty(3)); }));

  Engine eng(8);
  for (int rep = 0; rep < 100; ++rep) {
    auto g = gmtest::random_weighted_graph(eng, 6, 0.6);
    if (!is_connected(g)) continue;
    const Matrix r = effective_resistance_matrix(g);
    CHECK((r - r.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        for (int c = 0; c < 6; ++c) CHECK(r(a, c) <= r(a, b) + r(b, c) + 1e-10);
  }
}

TEST_CASE("spectrum") {
  const auto a = spectrum(k3().adjacency(), SpectrumOrder::descending);
  CHECK(a.order == SpectrumOrder::descending);
  CHECK(a.eigenvalues[0] == doctest::Approx(2.0));
  CHECK(a.eigenvalues[1] == doctest::Approx(-1.0));
  CHECK(a.eigenvalues[2] == doctest::Approx(-1.0));
  for (double v : spectrum(Matrix::Zero(4, 4), SpectrumOrder::ascending).eigenvalues) {
    CHECK(v == 0.0);
  }
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK(throws_code(ErrorCode::NotSymmetric, [&] { spectrum(bad, SpectrumOrder::ascending); }));

  // Characteristic identity: each eigenvalue makes M - w I singular.
  Engine eng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const auto g = gmtest::random_weighted_graph(eng, 7, 0.5);
    const Matrix l = laplacian(g);
    for (double w : spectrum(l, SpectrumOrder::ascending).eigenvalues) {
      const Matrix shifted = l - w * Matrix::Identity(7, 7);
      const double smin = Eigen::JacobiSVD<Matrix>(shifted).singularValues().minCoeff();
      CHECK(smin < 1e-9 * std::max(1.0, l.norm()));
    }
  }
}

TEST_CASE("padding") {
  CHECK(pad_to_order(k3(), 3) == k3());
  const auto p = pad_to_order(k3(), 5);
  CHECK(p.order() == 5);
  CHECK(p.adjacency().topLeftCorner(3, 3) == k3().adjacency());
  CHECK(p.adjacency().row(3).isZero());
  CHECK(p.adjacency().col(4).isZero());
  CHECK(pad_to_order(GraphMark::empty(2), 4) == GraphMark::empty(4));
  CHECK(throws_code(ErrorCode::TargetTooSmall, [] { pad_to_order(k3(), 2); }));

  Engine eng(4);
  for (int rep = 0; rep < 50; ++rep) {
    const auto g = gmtest::random_weighted_graph(eng, 5, 0.5);
    const Vector d = degrees(pad_to_order(g, 8));
    CHECK((d.head(5) - degrees(g)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(d.tail(3).isZero());
  }
}

TEST_CASE("spanning tree count") {
  CHECK(spanning_tree_count(k3()) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(spanning_tree_count(p3()) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<std::pair<int, int>> e{{0, 1}, {2, 3}};
  CHECK(spanning_tree_count(GraphMark::from_edges(4, e)) == 0.0);
  CHECK(spanning_tree_count(GraphMark::empty(1)) == 1.0);
  CHECK(std::isinf(log_spanning_tree_count(GraphMark::empty(3))));
  CHECK(spanning_tree_count(GraphMark::complete(5)) == doctest::Approx(125.0));
}

TEST_CASE("spanning tree count matches enumeration on small graphs") {
  for (int n = 1; n <= 5; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
      const auto edges = gmtest::edges_from_mask(n, mask);
      if (!gmtest::connected_by_union_find(n, edges)) continue;
      const auto g = GraphMark::from_edges(n, edges);
      const long long want = gmtest::enumerate_spanning_trees(n, edges);
      const double got = spanning_tree_count(g);
      CHECK(std::abs(got - static_cast<double>(want)) < 1e-6);
      CHECK(std::llround(got) == want);
    }
  }
}

TEST_CASE("weighted mark from segments") {
  std::vector<Segment> one{{0, 1, 5.0, 0.5}};
  CHECK(weighted_mark_from_segments(2, one, SegmentWeight::length).adjacency()(0, 1) == 5.0);
  CHECK(weighted_mark_from_segments(2, one, SegmentWeight::angle).adjacency()(1, 0) == 0.5);
  CHECK(weighted_mark_from_segments(2, one, SegmentWeight::length_plus_angle).adjacency()(0, 1) ==
        5.5);
  CHECK(weighted_mark_from_segments(3, {}, SegmentWeight::length).adjacency().isZero());
  std::vector<Segment> bad{{0, 3, 1.0, 0.0}};
  CHECK(throws_code(ErrorCode::InvalidEdge,
                    [&] { weighted_mark_from_segments(3, bad, SegmentWeight::length); }));
  std::vector<Segment> neg{{0, 1, -1.0, 0.0}};
  CHECK(throws_code(ErrorCode::NegativeLength,
                    [&] { weighted_mark_from_segments(3, neg, SegmentWeight::length); }));
  std::vector<Segment> loop{{1, 1, 1.0, 0.0}};
  CHECK(throws_code(ErrorCode::InvalidEdge,
                    [&] { weighted_mark_from_segments(3, loop, SegmentWeight::length); }));
  std::vector<Segment> dup{{0, 1, 0.0, 0.0}, {1, 0, 2.0, 0.0}};
  CHECK(throws_code(ErrorCode::InvalidEdge,
                    [&] { weighted_mark_from_segments(3, dup, SegmentWeight::length); }));
  std::vector<Segment> angle{{0, 1, 1.0, 2.0 * std::numbers::pi}};
  CHECK(throws_code(ErrorCode::InvalidParam,
                    [&] { weighted_mark_from_segments(3, angle, SegmentWeight::angle); }));
}

TEST_CASE("graph json round trip") {
  Engine eng(2);
  for (int rep = 0; rep < 30; ++rep) {
    const auto g = rep % 2 ? gmtest::random_binary_graph(eng, 6, 0.5)
                           : gmtest::random_weighted_graph(eng, 6, 0.5);
    const auto j = graph_to_json(g);
    CHECK(graph_from_json(nlohmann::json::parse(j.dump())) == g);
  }
  const auto j = graph_to_json(p3());
  CHECK(j.dump() == R"({"n":3,"edges":[[0,1],[1,2]]})");

  auto parse = [](const char* text) { return graph_from_json(nlohmann::json::parse(text)); };
  CHECK(parse(R"({"n":2,"edges":[[0,1,2.5]]})").adjacency()(1, 0) == 2.5);
  CHECK(throws_code(ErrorCode::InvalidEdge, [&] { parse(R"({"n":2,"edges":[[1,0]]})"); }));
  CHECK(throws_code(ErrorCode::InvalidEdge, [&] { parse(R"({"n":2,"edges":[[0,2]]})"); }));
  CHECK(throws_code(ErrorCode::InvalidEdge,
                    [&] { parse(R"({"n":3,"edges":[[0,1],[0,1]]})"); }));
  CHECK(throws_code(ErrorCode::ParseError, [&] { parse(R"({"edges":[]})"); }));

  const auto dir = std::filesystem::temp_directory_path() / "graphmark_test_graph";
  std::filesystem::create_directories(dir);
  save_graph(k3(), dir / "k3.json");
  CHECK(load_graph(dir / "k3.json") == k3());
  CHECK(throws_code(ErrorCode::IoError, [&] { load_graph(dir / "missing.json"); }));
}
