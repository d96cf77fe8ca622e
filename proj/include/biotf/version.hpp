#pragma once

namespace biotf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace biotf
