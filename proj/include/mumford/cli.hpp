#pragma once

// The command-line surface. Kept in the library so tests can drive it
// without spawning processes.

#include <iosfwd>
#include <string>
#include <vector>

namespace mumford {

/// Runs one invocation; `args` excludes the program name. Reports go to
/// `out`, error JSON to `err`. Returns the process exit code: 0 success,
/// 1 mathematical failure, 2 input or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mumford
