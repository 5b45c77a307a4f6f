#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nialg::cli {

enum ExitCode : int { kSuccess = 0, kMismatch = 1, kUsage = 2 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nialg::cli
