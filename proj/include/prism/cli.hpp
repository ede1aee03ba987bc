#pragma once

#include <ostream>

namespace prism::cli {

/// Entry point of the `prism` tool. Subcommands: extract, eval, bench,
/// deltae. Returns the process exit status; diagnostics go to `err` as a
/// single line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace prism::cli
