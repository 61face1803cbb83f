#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "graphmark/error.hpp"
#include "graphmark/graph_io.hpp"
#include "graphmark/pattern.hpp"
#include "graphmark/pattern_io.hpp"
#include "support.hpp"

using namespace graphmark;
namespace fs = std::filesystem;

namespace {

bool throws_code(ErrorCode code, auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

MarkedPointPattern make(Window w, std::vector<Point> pts) {
  std::vector<GraphMark> marks(pts.size(), GraphMark::empty(2));
  return MarkedPointPattern(w, std::move(pts), std::move(marks));
}

}  // namespace

TEST_CASE("window") {
  const Window w(0, 2, 1, 4);
  CHECK(w.area() == 6.0);
  CHECK(w.min_side() == 2.0);
  CHECK(w.contains({2.0, 4.0}));
  CHECK(!w.contains({2.0 + 1e-12, 4.0}));
  CHECK(throws_code(ErrorCode::InvalidWindow, [] { Window(1, 1, 0, 1); }));
  CHECK(throws_code(ErrorCode::InvalidWindow, [] { Window(0, 1, 2, 1); }));
}

TEST_CASE("pattern invariants") {
  const Window u = Window::unit_square();
  CHECK(throws_code(ErrorCode::PointOutsideWindow, [&] { make(u, {{0.5, 1.5}}); }));
  CHECK(throws_code(ErrorCode::InvalidPattern, [&] { make(u, {{0.5, 0.5}, {0.5, 0.5 + 1e-13}}); }));
  CHECK_NOTHROW(make(u, {{0.5, 0.5}, {0.5, 0.5 + 1e-9}}));
  CHECK(throws_code(ErrorCode::InvalidPattern, [&] {
    MarkedPointPattern(u, {{0.1, 0.1}}, {});
  }));
}

TEST_CASE("intensity") {
  std::vector<Point> pts;
  for (int i = 0; i < 110; ++i) pts.push_back({(i + 0.5) / 110.0, 0.5});
  CHECK(intensity_hat(make(Window::unit_square(), pts)) == doctest::Approx(110.0));
  CHECK(intensity_hat(make(Window(0, 2, 0, 2), {{1, 1}})) == 0.25);
  CHECK(throws_code(ErrorCode::EmptyPattern, [] { intensity_hat(make(Window::unit_square(), {})); }));
}

TEST_CASE("pairwise distances") {
  const auto p = make(Window(0, 5, 0, 5), {{0, 0}, {3, 4}});
  const Matrix d = pairwise_distances(p);
  CHECK(d.rows() == 2);
  CHECK(d(0, 1) == 5.0);
  CHECK(d(1, 0) == 5.0);
  CHECK(d(0, 0) == 0.0);
  CHECK(throws_code(ErrorCode::TooFewPoints, [] { pairwise_distances(make(Window::unit_square(), {{0.1, 0.1}})); }));

  Engine eng(3);
  std::vector<Point> pts;
  for (int i = 0; i < 40; ++i) pts.push_back({uniform01(eng), uniform01(eng)});
  const Matrix m = pairwise_distances(make(Window::unit_square(), pts));
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int a = 0; a < 40; ++a)
    for (int b = 0; b < 40; ++b)
      for (int c = 0; c < 40; ++c) CHECK(m(a, c) <= m(a, b) + m(b, c) + 1e-12);
}

TEST_CASE("boundary distance") {
  const auto p = make(Window::unit_square(), {{0.5, 0.5}, {0.1, 0.7}, {1.0, 0.3}});
  CHECK(boundary_distance(p, 0) == 0.5);
  CHECK(boundary_distance(p, 1) == doctest::Approx(0.1));
  CHECK(boundary_distance(p, 2) == 0.0);
  CHECK(throws_code(ErrorCode::IndexOutOfRange, [&] { boundary_distance(p, 3); }));
}

TEST_CASE("translation edge factor") {
  const Window u = Window::unit_square();
  CHECK(translation_edge_factor({0.3, 0.3}, {0.3, 0.3}, u) == 1.0);
  CHECK(translation_edge_factor({0.2, 0.4}, {0.7, 0.4}, u) == doctest::Approx(2.0));
  CHECK(translation_edge_factor({0.2, 0.2}, {0.7, 0.7}, u) == doctest::Approx(4.0));
  CHECK(throws_code(ErrorCode::PointOutsideWindow,
                    [&] { translation_edge_factor({0.2, 0.2}, {1.7, 0.7}, u); }));
  // >= 1 and nondecreasing in each offset.
  double prev = 1.0;
  for (int k = 0; k <= 9; ++k) {
    const double e = translation_edge_factor({0.0, 0.0}, {0.1 * k, 0.05}, u);
    CHECK(e >= 1.0);
    CHECK(e >= prev);
    prev = e;
  }
}

TEST_CASE("relabel") {
  std::vector<GraphMark> marks{GraphMark::empty(2), GraphMark::complete(2), GraphMark::complete(3)};
  MarkedPointPattern p(Window::unit_square(), {{0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}}, marks);
  const auto q = p.relabeled({2, 0, 1});
  CHECK(q.points() == p.points());
  CHECK(q.marks()[0] == marks[2]);
  CHECK(q.marks()[1] == marks[0]);
  CHECK(throws_code(ErrorCode::InvalidPattern, [&] { p.relabeled({0, 1}); }));
}

TEST_CASE("pattern json and csv io") {
  const fs::path dir = fs::temp_directory_path() / "graphmark_test_pattern";
  fs::create_directories(dir);
  Engine eng(9);
  std::vector<Point> pts;
  std::vector<GraphMark> marks;
  for (int i = 0; i < 12; ++i) {
    pts.push_back({uniform01(eng), uniform01(eng)});
    marks.push_back(gmtest::random_binary_graph(eng, 4, 0.5));
  }
  const MarkedPointPattern p(Window(0, 1, 0, 1), pts, marks);
  save_pattern(p, dir / "p.json");
  const auto q = load_pattern(dir / "p.json");
  CHECK(q.points() == p.points());
  CHECK(q.marks() == p.marks());
  CHECK(serialize_pattern(q) == serialize_pattern(p));

  {
    std::ofstream csv(dir / "p.csv");
    csv << "x,y,graph_file\n";
    for (int i = 0; i < 3; ++i) {
      save_graph(marks[i], dir / ("g" + std::to_string(i) + ".json"));
      csv << pts[i].x << "," << pts[i].y << ",g" << i << ".json\n";
    }
  }
  const auto c = load_pattern_csv(dir / "p.csv", Window::unit_square());
  CHECK(c.size() == 3);
  CHECK(c.marks()[2] == marks[2]);

  { std::ofstream empty(dir / "empty.json"); }
  CHECK(throws_code(ErrorCode::ParseError, [&] { load_pattern(dir / "empty.json"); }));
  CHECK(throws_code(ErrorCode::IoError, [&] { load_pattern(dir / "nothing.json"); }));
  {
    std::ofstream bad(dir / "outside.json");
    bad << R"({"window":{"xmin":0,"xmax":1,"ymin":0,"ymax":1},"points":[{"x":2,"y":0.5,"graph":{"n":1,"edges":[]}}]})";
  }
  CHECK(throws_code(ErrorCode::PointOutsideWindow, [&] { load_pattern(dir / "outside.json"); }));
}
