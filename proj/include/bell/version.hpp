#pragma once

namespace bell {

inline constexpr const char* kToolName = "bell";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace bell
