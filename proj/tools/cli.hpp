#pragma once

#include <iosfwd>

namespace supergraph::cli {

/// Runs the command line; returns 0 on success, 2 on usage errors and 1 on
/// runtime failures. Output goes to --out when given, otherwise to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace supergraph::cli
