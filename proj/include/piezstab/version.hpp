#pragma once

namespace piezstab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace piezstab
