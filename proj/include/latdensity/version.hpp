#pragma once

namespace latd {
inline constexpr const char* kVersion = "0.1.0";
}
