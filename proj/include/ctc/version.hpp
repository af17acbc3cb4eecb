#pragma once

namespace ctc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ctc
