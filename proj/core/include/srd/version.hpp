#pragma once

namespace srd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace srd
