#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace framespec::cli {

// Runs the command line; returns the process exit code
// (0 ok, 1 invariant violation, 2 parse error, 3 numerical failure).
int run(int argc, const char* const* argv);
// Same, with args excluding the program name and explicit streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace framespec::cli
