#pragma once

#include <filesystem>
#include <string>

#include "graphmark/graph.hpp"
#include "json.hpp"

namespace graphmark {

// Graph JSON: {"n": int, "edges": [[s, t, w], ...]} with 0-based s < t and an
// optional weight (default 1). Unit weights are written without the third
// element so binary graphs round-trip exactly.
GraphMark graph_from_json(const nlohmann::json& j);
nlohmann::ordered_json graph_to_json(const GraphMark& g);

GraphMark load_graph(const std::filesystem::path& path);
void save_graph(const GraphMark& g, const std::filesystem::path& path);

}  // namespace graphmark
