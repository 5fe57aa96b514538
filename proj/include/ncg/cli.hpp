#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncg::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kMalformedInput = 2, kPrecondition = 3, kInvariant = 4 };

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncg::cli
