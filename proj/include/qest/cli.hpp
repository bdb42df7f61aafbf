#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qest {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name. Reports go to `out` (or --out), usage
// and failing rows to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qest
