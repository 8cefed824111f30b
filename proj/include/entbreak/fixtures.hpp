#pragma once

// Versioned golden records binding concrete expected numbers to the test
// suite. Records live as JSON files under fixtures/.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace entbreak {

struct GoldenValue {
  std::string key;
  double value = 0.0;
  double tolerance = 0.0;
  std::string source;  // e.g. "definition", "closed-form", "generated"
};

struct GoldenRecord {
  std::string name;
  nlohmann::json inputs;
  std::vector<GoldenValue> expected;

  double get(const std::string& key) const;
  double tol(const std::string& key) const;
};

GoldenRecord load_golden(const std::filesystem::path& dir, const std::string& name);

// Names listed in catalog.json.
std::vector<std::string> golden_catalog(const std::filesystem::path& dir);

}  // namespace entbreak
