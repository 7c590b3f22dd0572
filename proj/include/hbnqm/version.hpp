#pragma once

namespace hbnqm {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "hbnqm";

} // namespace hbnqm
