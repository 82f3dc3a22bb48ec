#pragma once

namespace partsearch {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace partsearch
