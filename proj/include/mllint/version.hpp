#pragma once

namespace mllint {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace mllint
