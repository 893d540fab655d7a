#pragma once

namespace studentt {

inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace studentt
