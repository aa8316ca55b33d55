#pragma once

#include <iosfwd>

namespace arborab::cli {

/// Parses argv, runs one subcommand and prints one JSON document to `out`.
/// Exit codes: 0 success or decided, 1 usage or computation error (an error
/// document is still printed), 2 Undecided.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arborab::cli
