#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ibvp3 {

/// Command-line front end. Exit codes: 0 success, 2 usage/parse/validation
/// error, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace ibvp3
