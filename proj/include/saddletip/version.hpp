#pragma once

namespace saddletip {
inline constexpr const char* kVersion = "0.1.0";
}
