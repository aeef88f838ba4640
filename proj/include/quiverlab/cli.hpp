#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quiverlab {

// Runs one quiverlab command. args excludes the program name. Exit codes:
// 0 success, 1 domain or JSON error (reported as a JSON error object on out),
// 2 usage error. `verify` exits 1 when the certificate fails.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace quiverlab
