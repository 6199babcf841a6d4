#pragma once

namespace selfsim {

inline constexpr const char* kEngineVersion = "selfsim/0.1.0";

}  // namespace selfsim
