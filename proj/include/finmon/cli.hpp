#pragma once

#include <ostream>

namespace finmon {

// Full command-line front end. Exit codes: 0 success, 1 usage error,
// 2 parse/validation error, 3 domain invariant violation in input data,
// 4 law-suite failure. Canonical JSON goes to `out`; diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace finmon
