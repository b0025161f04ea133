#pragma once

namespace dqw {
inline constexpr const char* kVersion = "0.1.0";
}
