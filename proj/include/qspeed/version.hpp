#pragma once

namespace qspeed {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kVersionString = "qspeed 0.1.0";

}  // namespace qspeed
