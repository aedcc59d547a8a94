#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iw {

// Front end shared by the idealc binary and the in-process tests.
// Exit codes: 0 success, 1 check failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iw
