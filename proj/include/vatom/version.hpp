#pragma once

namespace vatom {

inline constexpr const char* kVersion = "0.1.0";

} // namespace vatom
