#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latsum::cli {

enum ExitCode : int { kOk = 0, kDomainError = 2, kUsage = 64, kMalformedInput = 65 };

/// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace latsum::cli
