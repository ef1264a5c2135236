#include "primebounds/published.hpp"

#include "published_data.inc"

namespace primebounds {

const std::string& published_values_text() {
  static const std::string text(kPublishedValuesJson);
  return text;
}

const nlohmann::json& published_values() {
  static const nlohmann::json parsed = nlohmann::json::parse(published_values_text());
  return parsed;
}

}  // namespace primebounds
