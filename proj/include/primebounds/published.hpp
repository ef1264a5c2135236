#pragma once

#include <string>

#include "json.hpp"

namespace primebounds {

// Frozen values as printed in the publication (data/published_values.json,
// embedded at build time). Reference data for comparisons only.
const nlohmann::json& published_values();
const std::string& published_values_text();

}  // namespace primebounds
