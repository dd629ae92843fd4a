#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sinflow {

/// Entry point shared by the binary and the tests; returns the exit code
/// (0 success, 1 error, 2 stopped on the iteration budget).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sinflow
