#pragma once

namespace mforge {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kFormatVersion = "1";
inline constexpr const char* kReportVersion = "1";

}  // namespace mforge
