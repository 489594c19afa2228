#pragma once

namespace ptchain {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ptchain
