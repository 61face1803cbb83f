#pragma once

#include <filesystem>
#include <string>

#include "graphmark/pattern.hpp"
#include "json.hpp"

namespace graphmark {

// Pattern JSON:
//   {"window": {"xmin":..,"xmax":..,"ymin":..,"ymax":..},
//    "points": [{"x":..,"y":..,"graph": <Graph JSON>}, ...]}
MarkedPointPattern pattern_from_json(const nlohmann::json& j);
nlohmann::ordered_json pattern_to_json(const MarkedPointPattern& p);
std::string serialize_pattern(const MarkedPointPattern& p);

MarkedPointPattern load_pattern(const std::filesystem::path& path);
// CSV alternative: header x,y,graph_file with one Graph JSON file per point,
// paths relative to the CSV's directory. The window is supplied separately.
MarkedPointPattern load_pattern_csv(const std::filesystem::path& path, const Window& window);
void save_pattern(const MarkedPointPattern& p, const std::filesystem::path& path);

}  // namespace graphmark
