#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "rne/grouping.hpp"
#include "rne/needs.hpp"

namespace rne::io {

using json = nlohmann::json;

// Parses a JSON file. Syntax errors and missing files raise ConfigError with
// the path and, for syntax errors, the line and column.
json load_json_file(const std::filesystem::path& path);

// {"labels": [...], "values": [...]}; labels optional.
NeedsVector needs_from_json(const json& j);
// {"weights": [...]} or a bare array.
WeightVector weights_from_json(const json& j);
// {"rows": [[...], ...]} or {"members": [{"values": [...]}, ...]}; a single
// needs object is read as a one-member group.
GroupNeedsMatrix group_from_json(const json& j);

struct Roster {
  std::vector<RobotSnapshot> robots;
  std::vector<TaskSite> tasks;
};

// {"robots": [{"id", "role", "needs": [7], "position": [x, y]}],
//  "tasks": [{"position": [x, y], "difficulty": "easy"|"hard"}]}
Roster roster_from_json(const json& j);

json assignment_to_json(const GroupAssignment& assignment);

Cell cell_from_json(const json& j);
json cell_to_json(Cell c);

}  // namespace rne::io
