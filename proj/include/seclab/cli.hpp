#pragma once

#include <iosfwd>

namespace seclab::cli {

// Full command-line entry point; returns the process exit code.  Output and
// error streams are injectable so tests can capture them.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace seclab::cli
