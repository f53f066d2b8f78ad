#pragma once

namespace pncalc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pncalc
