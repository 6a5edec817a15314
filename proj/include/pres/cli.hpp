#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pres {

// Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
// 3 internal identity violation.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

} // namespace pres
