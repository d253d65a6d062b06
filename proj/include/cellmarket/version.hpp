#pragma once

namespace cellmarket {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace cellmarket
