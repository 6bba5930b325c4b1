#pragma once

namespace wb {

inline constexpr const char* kVersion = "1.0.0";

} // namespace wb
