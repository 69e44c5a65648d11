#pragma once

namespace vibronic {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace vibronic
