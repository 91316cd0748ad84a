#pragma once

namespace photonsim {

inline constexpr const char *kVersion = "0.3.0";

}  // namespace photonsim
