#pragma once

namespace ptscatter {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ptscatter
