#pragma once

namespace k3syz {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace k3syz
