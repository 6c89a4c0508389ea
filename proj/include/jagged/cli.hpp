#pragma once

#include <iosfwd>

namespace jagged::cli {

/// Entry point of the `jagged` tool.
///
/// Returns 0 on success, 1 on a usage error and 2 on a data error (bad
/// input file, infeasible generator spec, failed verification). Results go
/// to `out` unless --output names a file; diagnostics go to `err` as one line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jagged::cli
