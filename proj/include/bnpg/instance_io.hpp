#pragma once

#include "bnpg/instance.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace bnpg {

// Canonical JSON text for instances and solutions: one top-level key per
// line in a fixed order, values compact, pairs and set members sorted.
// Rationals are "p" or "p/q" strings and +infinity is "inf".

std::string write_instance(const DesignInstance& inst);

/// Throws ParseError with a line/column or JSON-pointer location.
DesignInstance read_instance(std::string_view text);

nlohmann::ordered_json solution_fields(const Solution& sol);
std::string write_solution(const Solution& sol);

/// Reads the solution fields of a solution document (extra keys such as
/// "status" or "solver" are ignored).
Solution read_solution(std::string_view text);

/// Bare graph document {"n": ..., "edges": [[i, j], ...]}.
std::string write_graph(const Graph& g);
Graph read_graph(std::string_view text);

/// Renders an ordered JSON object with one top-level key per line.
std::string render_document(const nlohmann::ordered_json& doc);

nlohmann::json edges_to_json(const std::vector<Edge>& edges);

std::string read_file(const std::string& path);
/// Writes via a temporary file and rename so readers never see a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace bnpg
