#pragma once

namespace ceeat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ceeat
