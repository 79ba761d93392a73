#pragma once

namespace qne {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace qne
