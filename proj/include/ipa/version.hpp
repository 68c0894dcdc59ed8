#pragma once

namespace ipa {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ipa
