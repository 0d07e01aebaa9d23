#pragma once

namespace qpol {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace qpol
