#pragma once

namespace pev {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pev
