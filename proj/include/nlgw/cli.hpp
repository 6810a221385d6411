#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nlgw {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;     // computational or usage error
inline constexpr int kExitMismatch = 2;  // verified mismatch against reference data

// Entry point of the command-line tool; output goes to `out`, diagnostics and
// progress records to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlgw
