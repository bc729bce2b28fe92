#pragma once

namespace adiagrover {

inline constexpr const char kVersion[] = "0.1.0";

}  // namespace adiagrover
