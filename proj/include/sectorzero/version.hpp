#pragma once

namespace sectorzero {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace sectorzero
