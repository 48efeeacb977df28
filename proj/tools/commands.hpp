#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rpkh::cli {

// args excludes the program name. Returns 0 ok, 1 input error, 2 internal failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rpkh::cli
