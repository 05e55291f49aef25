#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expbasis {

/// Exit codes: 0 success, 2 usage/validation error, 3 resource budget
/// exceeded, 4 numerical non-convergence.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace expbasis
