#pragma once

// Reference values produced by tests/oracles/golden_values.py. Each entry in
// fixtures/golden.json records the oracle and its settings next to the value.

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace annulus_test {

inline const nlohmann::json& golden_table() {
  static const nlohmann::json table = [] {
    std::ifstream in(std::string(ANNULUS_FIXTURE_DIR) + "/golden.json");
    if (!in) throw std::runtime_error("cannot open fixtures/golden.json");
    return nlohmann::json::parse(in);
  }();
  return table;
}

inline double golden(const std::string& name) {
  for (const auto& e : golden_table().at("values")) {
    if (e.at("name") == name) return e.at("value").get<double>();
  }
  throw std::runtime_error("no golden value named " + name);
}

}  // namespace annulus_test
