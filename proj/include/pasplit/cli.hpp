#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pasplit {

// Entry point of the pasplit tool; args excludes the program name.
// Returns 0 iff every requested verdict passes, 1 if a verdict fails and 2
// on invalid input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pasplit
