#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omlab::cli {

/// Exit codes: 0 success, 1 runtime failure (e.g. bisection give-up),
/// 2 argument, config or input-file error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the `omlab` binary and the tests. `args` excludes the program name.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int parse_and_dispatch(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace omlab::cli
