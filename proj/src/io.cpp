#include "rne/io.hpp"

#include <fstream>
#include <sstream>

#include "rne/errors.hpp"

namespace rne::io {

namespace {

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(std::string(what) + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// Wraps library errors raised while building domain objects from file data.
template <typename F>
auto as_config(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << path.string() << ":" << line << ":" << col << ": invalid JSON (" << e.what() << ")";
    throw ConfigError(msg.str());
  }
}

NeedsVector needs_from_json(const json& j) {
  return as_config([&] {
    if (j.is_array()) return NeedsVector(numbers(j, "needs"));
    if (!j.is_object() || !j.contains("values")) throw ConfigError("needs object requires 'values'");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return NeedsVector(numbers(j.at("values"), "needs values"), std::move(labels));
  });
}

WeightVector weights_from_json(const json& j) {
  return as_config([&] {
    if (j.is_array()) return WeightVector(numbers(j, "weights"));
    if (!j.is_object() || !j.contains("weights")) throw ConfigError("weights object requires 'weights'");
    return WeightVector(numbers(j.at("weights"), "weights"));
  });
}

GroupNeedsMatrix group_from_json(const json& j) {
  return as_config([&] {
    std::vector<NeedsVector> rows;
    if (j.is_object() && j.contains("rows")) {
      for (const auto& r : j.at("rows")) rows.push_back(needs_from_json(r));
    } else if (j.is_object() && j.contains("members")) {
      for (const auto& r : j.at("members")) rows.push_back(needs_from_json(r));
    } else {
      rows.push_back(needs_from_json(j));
    }
    return GroupNeedsMatrix(std::move(rows));
  });
}

Cell cell_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ConfigError("cell must be [x, y] integers");
  return Cell{j[0].get<int>(), j[1].get<int>()};
}

json cell_to_json(Cell c) { return json::array({c.x, c.y}); }

Roster roster_from_json(const json& j) {
  return as_config([&] {
    Roster roster;
    if (!j.is_object() || !j.contains("robots")) throw ConfigError("roster requires 'robots'");
    for (const auto& r : j.at("robots")) {
      RobotSnapshot s;
      s.id = r.at("id").get<std::string>();
      s.role = parse_role(r.at("role").get<std::string>());
      s.needs = NeedsVector(numbers(r.at("needs"), "robot needs"), usar::labels());
      if (r.contains("position")) s.position = cell_from_json(r.at("position"));
      validate_snapshot(s);
      roster.robots.push_back(std::move(s));
    }
    if (j.contains("tasks")) {
      for (const auto& t : j.at("tasks")) {
        roster.tasks.push_back(
            {cell_from_json(t.at("position")), parse_difficulty(t.at("difficulty").get<std::string>())});
      }
    }
    return roster;
  });
}

json assignment_to_json(const GroupAssignment& assignment) {
  json scores = json::object();
  for (const auto& [k, v] : assignment.diagnostics) scores[k] = v;
  return json{{"strategy", std::string(to_string(assignment.strategy))},
              {"hard", assignment.hard_group},
              {"easy", assignment.easy_group},
              {"scores", scores}};
}

}  // namespace rne::io
