#pragma once

#include <ostream>

namespace tracelab::cli {

// Quick invariant checks over every module; prints one line per check and
// returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace tracelab::cli
