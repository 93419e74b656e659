#pragma once

#include <ostream>

namespace spreadline::cli {

// Exit codes: 0 success, 1 a pipeline stage failed, 2 bad usage.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spreadline::cli
