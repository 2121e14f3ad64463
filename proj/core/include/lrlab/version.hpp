#pragma once

namespace lrlab {
inline constexpr const char* kVersion = "0.1.0";
}
