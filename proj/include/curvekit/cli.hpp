#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvekit::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kDegenerate = 2;

inline constexpr const char* kSchema = "curvekit/1";

// Runs one command. `args` excludes the program name. Results go to `out`
// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Fixed-format numerics shared by the emitters: 12 significant digits.
std::string format_number(double v);

}  // namespace curvekit::cli
