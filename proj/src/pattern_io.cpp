#include "graphmark/pattern_io.hpp"

#include <fstream>
#include <sstream>

#include "graphmark/error.hpp"
#include "graphmark/graph_io.hpp"

namespace graphmark {

namespace {

double number_field(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_number()) {
    throw Error(ErrorCode::ParseError, where + ": missing numeric field \"" + key + "\"");
  }
  return obj.at(key).get<double>();
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

MarkedPointPattern pattern_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("window") || !j.contains("points") ||
      !j.at("points").is_array()) {
    throw Error(ErrorCode::ParseError, "pattern needs \"window\" and \"points\"");
  }
  const auto& wj = j.at("window");
  const Window window(number_field(wj, "xmin", "window"), number_field(wj, "xmax", "window"),
                      number_field(wj, "ymin", "window"), number_field(wj, "ymax", "window"));
  std::vector<Point> points;
  std::vector<GraphMark> marks;
  std::size_t index = 0;
  for (const auto& pj : j.at("points")) {
    const std::string where = "points[" + std::to_string(index++) + "]";
    points.push_back({number_field(pj, "x", where), number_field(pj, "y", where)});
    if (!pj.contains("graph")) throw Error(ErrorCode::ParseError, where + ": missing \"graph\"");
    marks.push_back(graph_from_json(pj.at("graph")));
  }
  return MarkedPointPattern(window, std::move(points), std::move(marks));
}

nlohmann::ordered_json pattern_to_json(const MarkedPointPattern& p) {
  nlohmann::ordered_json j;
  j["window"] = {{"xmin", p.window().xmin()},
                 {"xmax", p.window().xmax()},
                 {"ymin", p.window().ymin()},
                 {"ymax", p.window().ymax()}};
  auto points = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    nlohmann::ordered_json pj;
    pj["x"] = p.points()[i].x;
    pj["y"] = p.points()[i].y;
    pj["graph"] = graph_to_json(p.marks()[i]);
    points.push_back(std::move(pj));
  }
  j["points"] = std::move(points);
  return j;
}

std::string serialize_pattern(const MarkedPointPattern& p) {
  return pattern_to_json(p).dump() + "\n";
}

MarkedPointPattern load_pattern(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return pattern_from_json(j);
}

MarkedPointPattern load_pattern_csv(const std::filesystem::path& path, const Window& window) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || trim(line) != "x,y,graph_file") {
    throw Error(ErrorCode::ParseError, path.string() + ": header must be x,y,graph_file");
  }
  std::vector<Point> points;
  std::vector<GraphMark> marks;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::stringstream row(line);
    std::string xs, ys, file;
    if (!std::getline(row, xs, ',') || !std::getline(row, ys, ',') || !std::getline(row, file)) {
      throw Error(ErrorCode::ParseError,
                  path.string() + ":" + std::to_string(line_no) + ": expected x,y,graph_file");
    }
    try {
      points.push_back({std::stod(trim(xs)), std::stod(trim(ys))});
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError,
                  path.string() + ":" + std::to_string(line_no) + ": bad coordinate");
    }
    marks.push_back(load_graph(path.parent_path() / trim(file)));
  }
  return MarkedPointPattern(window, std::move(points), std::move(marks));
}

void save_pattern(const MarkedPointPattern& p, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << serialize_pattern(p);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace graphmark
