#pragma once

namespace spinphase {
inline constexpr const char* kVersion = "0.1.0";
}
