#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mforge {

// Runs one command-line invocation against the given streams and returns the
// process exit code (0 pass, 1 fail, 2 inconclusive/conditional, 3 usage or
// refused). The report goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mforge
