#pragma once

namespace besselint {

// Entry point of the command-line front end; returns the process exit code
// (0 success, 1 verification failures, 2 usage/domain errors).
int cli_main(int argc, const char* const* argv);

}  // namespace besselint
