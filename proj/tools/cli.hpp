#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace coocnet::cli {

inline constexpr std::string_view kVersion = "0.1.0";

/// Runs the command line. Data goes to `out` (or --out), logs to `err`.
/// Returns 0 on success, 1 on data errors, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coocnet::cli
