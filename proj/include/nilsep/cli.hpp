#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilsep {

/// Entry point of the `nilsep` tool; args excludes the program name.
/// Returns the process exit code: 0 success, 1 usage error, 2 failed check or contract error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilsep
