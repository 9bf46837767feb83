#pragma once

namespace ceqss {

inline constexpr const char* kLibraryVersion = "1.0.0";

} // namespace ceqss
