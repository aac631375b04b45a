#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bfnorm::cli {

/// Runs the command line tool.  Exit codes: 0 success, 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bfnorm::cli
