#pragma once

#include <iosfwd>

namespace cnnelm::cli {

enum ExitCode : int { kOk = 0, kEvaluationFailure = 1, kInputError = 2 };

/// Entry point behind the `cnnelm` executable. Normal output goes to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cnnelm::cli
