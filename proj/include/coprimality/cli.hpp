#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coprimality::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (without the program name). Reports go to `out`
// only once fully computed; usage diagnostics go to `err`, computation
// errors are written to `out` as a JSON object with an "error" member.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coprimality::cli
