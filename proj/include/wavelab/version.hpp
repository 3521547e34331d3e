#pragma once

namespace wavelab {

inline constexpr const char* version = "0.1.0";

}  // namespace wavelab
