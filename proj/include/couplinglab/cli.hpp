// Command-line front end.
//
//   couplinglab <factors|sweep-phase|sweep-flux|spectrum|anticross|converge>
//               --config PATH [--out PATH] [--plot] [--format csv] [--quiet]
//
// Exit codes: 0 success, 1 invalid input or usage, 2 numeric failure.
#pragma once

#include <iosfwd>

namespace couplinglab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumeric = 2;

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace couplinglab
