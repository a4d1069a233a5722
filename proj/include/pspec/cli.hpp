#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pspec {

// Exit codes: 0 success, 2 config error, 3 numerical failure,
// 4 INCONSISTENT converge verdict.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// convenience wrapper for tests
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pspec
