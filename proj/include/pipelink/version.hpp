#pragma once

namespace pipelink {

inline constexpr const char* kVersion = "0.1.0";

} // namespace pipelink
