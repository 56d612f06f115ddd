#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tbill::cli {

/// Exit codes: 0 success, 1 other failure, 2 usage or configuration error,
/// 3 vertex hit under --strict, 4 geometric degeneracy.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tbill::cli
