#pragma once

namespace eit {
inline constexpr const char* kVersion = "0.1.0";
}
