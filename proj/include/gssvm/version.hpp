#pragma once

namespace gssvm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gssvm
