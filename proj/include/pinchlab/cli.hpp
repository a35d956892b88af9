#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pinchlab::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

/// Runs the command line `args` (args[0] is the program name). Results go
/// to `out` unless --out names a file; diagnostics go to `err`.
/// `env_threads` is the value of PINCHLAB_THREADS, or empty.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::string& env_threads = {});

}  // namespace pinchlab::cli
