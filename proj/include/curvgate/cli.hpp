// Command-line front end. Exit codes: 0 all checks pass, 1 check failures,
// 2 usage/config/schema error, 3 invalid input data.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace curvgate {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curvgate
