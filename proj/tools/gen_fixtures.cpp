// Regenerates the "generated" golden records from closed-form expressions,
// independent of the library implementations they are used to test.

#include "entbreak/io.hpp"

#include <cstdio>
#include <string>

#include <json.hpp>

using nlohmann::json;

int main(int argc, char** argv) {
  std::string dir = "fixtures";
  if (argc > 2) {
    std::fprintf(stderr, "usage: gen-fixtures [output-dir]\n");
    return 64;
  }
  if (argc == 2) dir = argv[1];

  // Two-qubit isotropic-family concurrence on an evenly spaced mixing grid.
  json expected = json::array();
  json alphas = json::array();
  for (int i = 0; i <= 10; ++i) {
    double alpha = i / 10.0;
    double c = std::max(0.0, (3.0 * alpha - 1.0) / 2.0);
    char key[32];
    std::snprintf(key, sizeof(key), "alpha_%.1f", alpha);
    alphas.push_back(alpha);
    expected.push_back(
        {{"key", key}, {"value", c}, {"tolerance", 1e-9}, {"source", "generated"}});
  }
  json record = {{"name", "isotropic_concurrence"},
                 {"inputs",
                  {{"d", 2},
                   {"alphas", alphas},
                   {"formula", "C(alpha) = max(0, (3 alpha - 1) / 2)"}}},
                 {"expected", expected}};
  const std::string path = dir + "/isotropic_concurrence.json";
  entbreak::atomic_write_text(path, record.dump(2) + "\n");
  std::printf("wrote %s\n", path.c_str());
  return 0;
}
