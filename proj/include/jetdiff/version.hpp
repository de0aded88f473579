#pragma once

#include <string_view>

namespace jetdiff {

// Bump whenever a cached closed form could change.
inline constexpr std::string_view kEngineVersion = "1.0.0";

}  // namespace jetdiff
