#pragma once

namespace qrate {
inline constexpr const char* kVersion = "1.0.0";
}
