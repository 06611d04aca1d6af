#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperpick::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kInvalidInput = 2, kRefused = 3 };

/// Runs one command line (without the program name). The report goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperpick::cli
