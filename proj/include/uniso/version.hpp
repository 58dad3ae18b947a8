#pragma once

namespace uniso {
inline constexpr const char* kVersion = "0.1.0";
}
