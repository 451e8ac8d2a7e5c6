#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flatstrata {

// Runs one subcommand; args excludes the program name. Returns the exit
// code: 0 success, 1 domain error, 2 malformed input or usage error.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace flatstrata
