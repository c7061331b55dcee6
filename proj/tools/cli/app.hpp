// app.hpp: command-line front end: flag parsing, dispatch and output.

#pragma once

#include <iosfwd>

namespace etapt::cli {

// Parses argv, runs the chosen subcommand and writes the report to `out` (or
// to --output). Returns the process exit code.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace etapt::cli
