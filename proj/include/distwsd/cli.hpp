#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace distwsd::cli {

// Runs the command line in-process. args excludes the program name.
// Returns 0 on success, 1 on user/resource errors, 2 on internal errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace distwsd::cli
