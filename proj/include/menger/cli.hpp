#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace menger::cli {

/// Exit codes: 0 success, 2 validation error, 1 anything else.
/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace menger::cli
