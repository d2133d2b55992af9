#pragma once

// Command-line front end.  run() is main() minus the process boundary so
// tests can drive every subcommand in-process against string streams.
//
// Exit codes: 0 success, 1 verification or check failure, 2 input or
// usage error, 3 solver size limit exceeded.

#include <iosfwd>
#include <string>
#include <vector>

namespace linedarp::cli {

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace linedarp::cli
