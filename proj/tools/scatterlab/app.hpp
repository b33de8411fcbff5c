#pragma once

#include <iosfwd>

namespace scatterlab {

enum ExitCode : int { kOk = 0, kIoError = 1, kConfigError = 2, kNumericError = 3 };

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scatterlab
