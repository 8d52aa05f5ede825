#pragma once

// JSON interchange for tensor documents:
//   {"n": 3, "components": [{"idx": [1,1,2], "value": 1.0}, ...]}
// Triples are 1-based; unknown fields are rejected so that typos in hand
// written inputs fail loudly instead of being ignored.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chen/errors.hpp"
#include "chen/tensor.hpp"

namespace chen {

inline SymmetricCubic tensor_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidInput("tensor document must be an object");
  for (const auto& item : doc.items())
    if (item.key() != "n" && item.key() != "components")
      throw InvalidInput("unknown field '" + item.key() +
                         "' in tensor document");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw InvalidInput("tensor document needs an integer field 'n'");
  if (!doc.contains("components") || !doc["components"].is_array())
    throw InvalidInput("tensor document needs an array field 'components'");

  const int n = doc["n"].get<int>();
  std::vector<CubicComponent> raw;
  for (const auto& entry : doc["components"]) {
    if (!entry.is_object())
      throw InvalidInput("each component must be an object");
    for (const auto& item : entry.items())
      if (item.key() != "idx" && item.key() != "value")
        throw InvalidInput("unknown field '" + item.key() + "' in component");
    if (!entry.contains("idx") || !entry["idx"].is_array() ||
        entry["idx"].size() != 3)
      throw InvalidInput("component 'idx' must be an array of three indices");
    if (!entry.contains("value") || !entry["value"].is_number())
      throw InvalidInput("component 'value' must be a number");
    CubicComponent comp{};
    for (int t = 0; t < 3; ++t) {
      if (!entry["idx"][t].is_number_integer())
        throw InvalidInput("component indices must be integers");
      comp.idx[t] = entry["idx"][t].get<int>();
    }
    comp.value = entry["value"].get<double>();
    raw.push_back(comp);
  }
  return SymmetricCubic::from_components(n, raw);
}

inline SymmetricCubic tensor_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  return tensor_from_json(doc);
}

inline nlohmann::ordered_json tensor_to_json(const SymmetricCubic& h) {
  nlohmann::ordered_json doc;
  doc["n"] = h.n();
  doc["components"] = nlohmann::ordered_json::array();
  for (const auto& comp : h.components()) {
    nlohmann::ordered_json entry;
    entry["idx"] = {comp.idx[0], comp.idx[1], comp.idx[2]};
    entry["value"] = comp.value;
    doc["components"].push_back(std::move(entry));
  }
  return doc;
}

}  // namespace chen
