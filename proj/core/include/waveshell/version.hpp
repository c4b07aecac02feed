#pragma once

namespace waveshell {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace waveshell
