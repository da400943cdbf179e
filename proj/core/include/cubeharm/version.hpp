#pragma once

namespace cubeharm {

inline constexpr const char* kToolVersion = "cube-harmonics 1.0.0";

} // namespace cubeharm
