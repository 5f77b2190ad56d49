#pragma once

namespace memshape {

inline constexpr const char* kToolName = "memshape";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace memshape
