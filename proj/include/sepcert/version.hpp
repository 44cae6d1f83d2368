#pragma once

namespace sepcert {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sepcert
