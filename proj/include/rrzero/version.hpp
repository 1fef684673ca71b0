#pragma once

namespace rrzero {

inline constexpr const char* kToolName = "rrzero";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kDescriptionFileVersion = 1;

}  // namespace rrzero
