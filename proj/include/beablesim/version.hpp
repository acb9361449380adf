#pragma once

namespace beablesim {

inline constexpr const char* kToolName = "beablesim";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace beablesim
