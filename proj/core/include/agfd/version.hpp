#pragma once

namespace agfd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace agfd
