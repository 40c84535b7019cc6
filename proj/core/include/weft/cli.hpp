#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weft {

/// Command-line front end: gen | eval | transform | metrics | verify | reduce.
/// Returns the process exit code (0 ok, 1 verification failure, 2 bad input).
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace weft
