#pragma once

namespace liegeom {

inline constexpr const char *kVersion = "0.1.0";

} // namespace liegeom
