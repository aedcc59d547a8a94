#include "iw/cli.hpp"

namespace iw {
int run_cli(const std::vector<std::string>&, std::ostream&, std::ostream&) { return 2; }
}
