#include "graphmark/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "graphmark/error.hpp"

namespace graphmark {

GraphMark graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_integer()) {
    throw Error(ErrorCode::ParseError, "graph object needs an integer field \"n\"");
  }
  const auto n = j.at("n").get<long long>();
  if (n < 1 || n > 100000) throw Error(ErrorCode::InvalidGraph, "graph order out of range");
  Matrix a = Matrix::Zero(n, n);
  if (j.contains("edges")) {
    const auto& edges = j.at("edges");
    if (!edges.is_array()) throw Error(ErrorCode::ParseError, "\"edges\" must be an array");
    for (const auto& e : edges) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3 || !e[0].is_number_integer() ||
          !e[1].is_number_integer() || (e.size() == 3 && !e[2].is_number())) {
        throw Error(ErrorCode::ParseError, "edge must be [s, t] or [s, t, w]: " + e.dump());
      }
      const auto s = e[0].get<long long>();
      const auto t = e[1].get<long long>();
      if (s < 0 || t >= n || s >= t) {
        throw Error(ErrorCode::InvalidEdge, "edge needs 0 <= s < t < n: " + e.dump());
      }
      if (a(s, t) != 0.0) throw Error(ErrorCode::InvalidEdge, "duplicate edge " + e.dump());
      const double w = e.size() == 3 ? e[2].get<double>() : 1.0;
      if (!(w > 0.0)) throw Error(ErrorCode::InvalidEdge, "edge weight must be > 0: " + e.dump());
      a(s, t) = a(t, s) = w;
    }
  }
  return GraphMark(std::move(a));
}

nlohmann::ordered_json graph_to_json(const GraphMark& g) {
  nlohmann::ordered_json j;
  j["n"] = g.order();
  auto edges = nlohmann::ordered_json::array();
  const Matrix& a = g.adjacency();
  for (int s = 0; s < g.order(); ++s) {
    for (int t = s + 1; t < g.order(); ++t) {
      if (a(s, t) == 0.0) continue;
      if (a(s, t) == 1.0) {
        edges.push_back({s, t});
      } else {
        edges.push_back({s, t, a(s, t)});
      }
    }
  }
  j["edges"] = std::move(edges);
  return j;
}

GraphMark load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return graph_from_json(j);
}

void save_graph(const GraphMark& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << graph_to_json(g).dump() << '\n';
}

}  // namespace graphmark
