#pragma once
// Command-line front end. Exit codes: 0 pass, 1 a check failed, 2 usage or
// configuration error.

#include <iosfwd>

namespace mimetic::cli {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mimetic::cli
