#pragma once

#include <ostream>

namespace quadratis {

// Entry point of the quadratis command line tool. Reports go to `out`;
// failures print one JSON error line to `err` and return nonzero.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace quadratis
