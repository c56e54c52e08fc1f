#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcrypt::cli {

enum ExitCode { kOk = 0, kUsage = 2, kDataError = 3 };

/// Runs one subcommand. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace qcrypt::cli
