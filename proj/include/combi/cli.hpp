#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace combi::cli {

/// Exit codes: 0 success, 1 domain or format error, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. Input path `-` reads
/// standard input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace combi::cli
