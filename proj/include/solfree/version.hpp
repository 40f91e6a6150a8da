#pragma once

namespace solfree {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace solfree
