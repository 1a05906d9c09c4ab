#pragma once

namespace lpplab {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace lpplab
