#pragma once

#include <iosfwd>

namespace laxfact {

// Exit codes: 0 every verdict passed (vacuous included), 1 some verdict
// failed, 2 usage, format, contract or resource error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace laxfact
