#pragma once

namespace harper {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace harper
