#pragma once

namespace fracvar {

inline constexpr const char* kVersion = "0.1.0";

} // namespace fracvar
