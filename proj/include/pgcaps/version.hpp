#pragma once

namespace pgcaps {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pgcaps
