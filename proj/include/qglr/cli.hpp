#pragma once

#include <ostream>

namespace qglr {

/// Entry point of the qglr_bench tool. Returns 0 on success, 2 on usage
/// errors (including no arguments) and 1 on runtime failures.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qglr
