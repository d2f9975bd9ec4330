#pragma once

namespace ehma {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ehma
