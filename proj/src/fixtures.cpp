#include "entbreak/fixtures.hpp"

#include <fstream>
#include <stdexcept>

namespace entbreak {

namespace fs = std::filesystem;
using nlohmann::json;

double GoldenRecord::get(const std::string& key) const {
  for (const GoldenValue& v : expected)
    if (v.key == key) return v.value;
  throw std::invalid_argument("golden record '" + name + "' has no key '" + key + "'");
}

double GoldenRecord::tol(const std::string& key) const {
  for (const GoldenValue& v : expected)
    if (v.key == key) return v.tolerance;
  throw std::invalid_argument("golden record '" + name + "' has no key '" + key + "'");
}

static json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("fixtures: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw std::runtime_error("fixtures: malformed JSON in " + path.string() + ": " + err.what());
  }
  return j;
}

GoldenRecord load_golden(const fs::path& dir, const std::string& name) {
  json j = load_json(dir / (name + ".json"));
  GoldenRecord rec;
  rec.name = j.at("name").get<std::string>();
  if (rec.name != name)
    throw std::runtime_error("fixtures: file " + name + ".json declares name " + rec.name);
  rec.inputs = j.value("inputs", json::object());
  for (const json& e : j.at("expected")) {
    GoldenValue v;
    v.key = e.at("key").get<std::string>();
    v.value = e.at("value").get<double>();
    v.tolerance = e.at("tolerance").get<double>();
    v.source = e.value("source", "");
    rec.expected.push_back(std::move(v));
  }
  if (rec.expected.empty())
    throw std::runtime_error("fixtures: record " + name + " has no expected values");
  return rec;
}

std::vector<std::string> golden_catalog(const fs::path& dir) {
  json j = load_json(dir / "catalog.json");
  std::vector<std::string> names;
  for (const json& e : j.at("records")) names.push_back(e.get<std::string>());
  if (names.empty()) throw std::runtime_error("fixtures: empty catalog");
  return names;
}

}  // namespace entbreak
