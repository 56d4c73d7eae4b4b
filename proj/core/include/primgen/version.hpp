#pragma once

namespace primgen {

inline constexpr char kVersion[] = "0.1.0";

}  // namespace primgen
