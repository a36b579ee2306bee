#pragma once

namespace couplinglab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace couplinglab
