#pragma once

namespace kerap::cli {

/// Entry point for the `kerap` binary. Exit codes: 0 success, 1 runtime
/// failure, 2 usage error.
int run(int argc, char** argv);

}  // namespace kerap::cli
