#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ghgif::cli {

enum ExitCode : int { exit_ok = 0, exit_bad_parameters = 2, exit_io = 3, exit_consistency = 4 };

/// Full command-line entry point. Messages go to `out` and `err`; the return
/// value is one of ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

} // namespace ghgif::cli
