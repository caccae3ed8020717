#pragma once

#include <iosfwd>

namespace sessionscope::cli {

/// Exit codes: 0 success, 1 validation or runtime failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sessionscope::cli
