#pragma once

// Published constants compiled into the library.

#include "phom/embedded_constants.hpp"

#include <json.hpp>

namespace phom::detail {

inline const nlohmann::json& reference_constants() {
  static const nlohmann::json parsed = nlohmann::json::parse(kReferenceConstantsJson);
  return parsed;
}

}  // namespace phom::detail
